//! The quantum-scenario U-NOT gate: `N` copies of `psi` in, `M` approximate
//! complements out, plus `N + M` clones of `psi` left in the input/ancilla
//! register.
//!
//! The output of the gate on `|psi>^N (x) |X>` is
//!
//! ```text
//! sum_j gamma_j |{(N+M-j) psi; j psi_f}>_ab (x) |{(M-j) psi_f; j psi}>_c
//! gamma_j = (-1)^j C(N+M-j, N)^{1/2} C(N+M+1, M)^{-1/2}
//! ```
//!
//! where `psi_f` is the Dicke frame partner of `psi` (see [`crate::dicke`]).
//! Writing the ideal complement instead of `psi_f` multiplies the whole
//! state by `(-1)^M`, so no observable depends on the choice.

use alloc::vec::Vec;

use num_rational::Ratio;
// Needed without std; shadowed by inherent f64 methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float as _;

use crate::binom::binomial;
use crate::dicke::{
    self, dicke_rotation, frame_unitary, DickeBasisLabel, SymDensity, ORACLE_MAX_QUBITS,
};
use crate::error::{Error, Result};
use crate::linalg::{self, re, CMatrix, CVector, C64};
use crate::qubit::{self, DensityMatrix, PureQubit, ScaledStateForm};

/// Largest `N + M + 1` for which the gate coefficients are computed.
pub const MAX_GATE_SIZE: usize = 60;

/// Amplitudes `gamma_0 ..= gamma_M` of the gate output.
#[derive(Debug, Clone, PartialEq)]
pub struct GateCoefficients {
    n: usize,
    m: usize,
    gamma: Vec<f64>,
}

impl GateCoefficients {
    /// Exact integer binomials, one square root per coefficient.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter("the gate needs N >= 1 and M >= 1".into()));
        }
        if n + m + 1 > MAX_GATE_SIZE {
            return Err(Error::Capacity {
                what: "N + M + 1",
                value: n + m + 1,
                limit: MAX_GATE_SIZE,
            });
        }
        let denom = binomial((n + m + 1) as u64, m as u64)?;
        let gamma = (0..=m)
            .map(|j| {
                let num = binomial((n + m - j) as u64, n as u64)?;
                let mag = Ratio::new(num, denom);
                let v = (*mag.numer() as f64 / *mag.denom() as f64).sqrt();
                Ok(if j % 2 == 0 { v } else { -v })
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self { n, m, gamma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// `|sum_j gamma_j^2 - 1|`
    pub fn normalization_defect(&self) -> f64 {
        (self.gamma.iter().map(|g| g * g).sum::<f64>() - 1.0).abs()
    }

    /// True when `sign(gamma_j) = (-1)^j` for every `j`.
    pub fn signs_alternate(&self) -> bool {
        self.gamma
            .iter()
            .enumerate()
            .all(|(j, g)| if j % 2 == 0 { *g > 0.0 } else { *g < 0.0 })
    }

    /// Copy with `gamma_j` shifted by `delta`. Used to exercise the
    /// verification checks on a deliberately broken gate.
    pub fn perturbed(&self, j: usize, delta: f64) -> Self {
        let mut out = self.clone();
        if let Some(g) = out.gamma.get_mut(j) {
            *g += delta;
        }
        out
    }
}

pub fn gate_coefficients(n: usize, m: usize) -> Result<GateCoefficients> {
    GateCoefficients::new(n, m)
}

/// Exact `N / (N + 2)`.
pub fn not_scaling_exact(n: usize) -> Ratio<u64> {
    Ratio::new(n as u64, n as u64 + 2)
}

/// Exact `N/(N+2) + 2N/((N+M)(N+2))`.
pub fn clone_scaling_exact(n: usize, m: usize) -> Ratio<u64> {
    let (n, m) = (n as u64, m as u64);
    Ratio::new(n, n + 2) + Ratio::new(2 * n, (n + m) * (n + 2))
}

pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Bipartite output of the gate in the Dicke bases of the `ab` register
/// (`N + M` qubits) and the `c` register (`M` qubits), both in the frame of
/// the input qubit.
///
/// Row `k` of `coeffs` is the `ab` Dicke state with `k` partner factors,
/// i.e. `|X_k(psi)>`. Column `j` is the `c` state `|{(M-j) psi_f; j psi}>`,
/// which is Dicke label `M - j`; see [`JointOutputState::c_label`].
#[derive(Debug, Clone, PartialEq)]
pub struct JointOutputState {
    n: usize,
    m: usize,
    frame: PureQubit,
    coeffs: CMatrix,
}

impl JointOutputState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn frame(&self) -> &PureQubit {
        &self.frame
    }

    pub fn coeffs(&self) -> &CMatrix {
        &self.coeffs
    }

    pub fn ab_dim(&self) -> usize {
        self.n + self.m + 1
    }

    pub fn c_dim(&self) -> usize {
        self.m + 1
    }

    /// Dicke label of `c` column `j` (`j` original factors, `M - j` partners).
    pub fn c_label(&self, j: usize) -> Result<DickeBasisLabel> {
        if j > self.m {
            return Err(Error::InvalidParameter(alloc::format!(
                "c index {j} exceeds M = {}",
                self.m
            )));
        }
        DickeBasisLabel::new(self.m, self.m - j)
    }

    /// Dicke label of `ab` row `k`.
    pub fn ab_label(&self, k: usize) -> Result<DickeBasisLabel> {
        DickeBasisLabel::new(self.n + self.m, k)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }

    /// Coefficients with columns reordered by `c` Dicke label.
    fn coeffs_by_c_label(&self) -> CMatrix {
        let m = self.m;
        CMatrix::from_fn(self.ab_dim(), self.c_dim(), |a, k| self.coeffs[(a, m - k)])
    }

    /// Reduced state of the `c` register in the Dicke basis of `M` qubits.
    pub fn c_density(&self) -> SymDensity {
        let cl = self.coeffs_by_c_label();
        // rho_c[k, k'] = sum_a C[a, k] C[a, k']^*
        SymDensity::from_raw(self.frame, cl.transpose() * cl.map(|z| z.conj()))
    }

    /// Reduced state of the `ab` register in the Dicke basis of `N + M` qubits.
    pub fn ab_density(&self) -> SymDensity {
        SymDensity::from_raw(self.frame, &self.coeffs * self.coeffs.adjoint())
    }

    /// Coefficients on the computational-frame Dicke bases, `c` columns in
    /// label order.
    pub fn to_computational(&self) -> CMatrix {
        let w = frame_unitary(&self.frame);
        let dab = dicke_rotation(self.n + self.m, &w);
        let dc = dicke_rotation(self.m, &w);
        dab * self.coeffs_by_c_label() * dc.transpose()
    }

    /// `<self|other>` regardless of the frames the two states are stored in.
    pub fn inner(&self, other: &JointOutputState) -> Result<C64> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::ShapeMismatch {
                expected: self.ab_dim() * self.c_dim(),
                got: other.ab_dim() * other.c_dim(),
            });
        }
        let a = self.to_computational();
        let b = other.to_computational();
        Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
    }

    /// Full register vector with qubits ordered `a`, `b`, `c`.
    pub fn embed(&self) -> Result<CVector> {
        let total = self.n + 2 * self.m;
        if total > ORACLE_MAX_QUBITS {
            return Err(Error::Capacity {
                what: "full-tensor qubit count",
                value: total,
                limit: ORACLE_MAX_QUBITS,
            });
        }
        let ab: Vec<CVector> = (0..self.ab_dim())
            .map(|k| dicke::embed_dicke(self.ab_label(k)?, &self.frame))
            .collect::<Result<_>>()?;
        let cs: Vec<CVector> = (0..self.c_dim())
            .map(|j| dicke::embed_dicke(self.c_label(j)?, &self.frame))
            .collect::<Result<_>>()?;
        let mut out = CVector::zeros(1 << total);
        for (a, va) in ab.iter().enumerate() {
            for (j, vc) in cs.iter().enumerate() {
                let z = self.coeffs[(a, j)];
                if z != linalg::ZERO {
                    out += va.kronecker(vc) * z;
                }
            }
        }
        Ok(out)
    }
}

/// Runs the gate with explicitly supplied coefficients.
pub fn apply_unot_with(psi: &PureQubit, gate: &GateCoefficients) -> JointOutputState {
    let (n, m) = (gate.n, gate.m);
    let mut coeffs = CMatrix::zeros(n + m + 1, m + 1);
    for (j, g) in gate.gamma.iter().enumerate() {
        coeffs[(j, j)] = re(*g);
    }
    JointOutputState {
        n,
        m,
        frame: *psi,
        coeffs,
    }
}

/// Gate output for `N` copies of `psi` and `M` requested complements.
pub fn apply_unot(psi: &PureQubit, n: usize, m: usize) -> Result<JointOutputState> {
    Ok(apply_unot_with(psi, &GateCoefficients::new(n, m)?))
}

/// State of any one of the `M` complement qubits.
pub fn complement_output(joint: &JointOutputState) -> DensityMatrix {
    dicke::reduce_single_qubit(&joint.c_density()).expect("c register has M >= 1 qubits")
}

/// State of any one of the `N + M` clone qubits of the `ab` register.
pub fn clone_output(joint: &JointOutputState) -> DensityMatrix {
    dicke::reduce_single_qubit(&joint.ab_density()).expect("ab register has N + M >= 2 qubits")
}

/// Partial-transpose test on a pair of complement qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparabilityReport {
    pub separable: bool,
    pub min_pt_eigenvalue: f64,
}

pub fn complement_pair(joint: &JointOutputState) -> Result<DensityMatrix> {
    if joint.m < 2 {
        return Err(Error::InvalidParameter(
            "pairwise separability needs M >= 2 complements".into(),
        ));
    }
    dicke::reduce_two_qubits(&joint.c_density())
}

pub fn check_pairwise_separability(joint: &JointOutputState) -> Result<SeparabilityReport> {
    check_pair(&complement_pair(joint)?)
}

/// PPT check on an arbitrary two-qubit state.
pub fn check_pair(rho: &DensityMatrix) -> Result<SeparabilityReport> {
    let (separable, min_pt_eigenvalue) = qubit::is_ppt(rho)?;
    Ok(SeparabilityReport {
        separable,
        min_pt_eigenvalue,
    })
}

/// Single-qubit outputs of the gate and their fidelities.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputReport {
    pub c_single: DensityMatrix,
    pub ab_single: DensityMatrix,
    /// Overlap of a complement qubit with the ideal complement.
    pub fidelity_not: f64,
    /// Overlap of a clone qubit with the input.
    pub fidelity_clone: f64,
    pub scaling_not: f64,
    pub scaling_clone: f64,
}

pub fn output_report(joint: &JointOutputState) -> OutputReport {
    let c_single = complement_output(joint);
    let ab_single = clone_output(joint);
    let sigma = joint.frame.density();
    let overlap = |rho: &DensityMatrix| (sigma.matrix() * rho.matrix()).trace().re;
    let fidelity_not = 1.0 - overlap(&c_single);
    let fidelity_clone = overlap(&ab_single);
    OutputReport {
        scaling_not: 2.0 * fidelity_not - 1.0,
        scaling_clone: 2.0 * fidelity_clone - 1.0,
        c_single,
        ab_single,
        fidelity_not,
        fidelity_clone,
    }
}

/// Expected complement output `s_N sigma_perp + (1 - s_N)/2`.
pub fn expected_complement(psi: &PureQubit, n: usize) -> DensityMatrix {
    ScaledStateForm {
        direction: psi.complement(),
        scaling: ratio_to_f64(not_scaling_exact(n)),
    }
    .density()
}

/// Expected clone output `s sigma + (1 - s)/2` with the cloning scaling.
pub fn expected_clone(psi: &PureQubit, n: usize, m: usize) -> DensityMatrix {
    ScaledStateForm {
        direction: *psi,
        scaling: ratio_to_f64(clone_scaling_exact(n, m)),
    }
    .density()
}
