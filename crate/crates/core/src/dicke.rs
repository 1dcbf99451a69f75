//! States of the symmetric subspace in the Dicke basis.
//!
//! A frame is a pure qubit `psi`; its partner is `psi_f = (-beta*, alpha*)`,
//! so the frame matrix `[psi | psi_f]` lies in SU(2) and the frame `|0>`
//! is exactly the computational basis. The label `k` counts `psi_f`
//! factors in the normalized symmetric state `|{(N-k) psi; k psi_f}>`,
//! ascending. `psi_f` equals the ideal complement of `psi` up to the
//! global sign -1.
//!
//! Reductions use the closed form
//!
//! ```text
//! <x| Tr_{N-r} rho |y> = sum_m rho[m+|x|, m+|y|] C(N-r, m) / sqrt(C(N, m+|x|) C(N, m+|y|))
//! ```
//!
//! for kept bit strings `x`, `y` of length `r`, expressed in the frame basis
//! and rotated back to the computational basis.

use alloc::format;
use alloc::vec::Vec;

// Needed without std; shadowed by inherent f64 methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float as _;

use crate::binom::binomial_real;
use crate::error::{Error, Result};
use crate::linalg::{self, re, CMatrix, CVector, Mat2, C64, ONE, ZERO};
use crate::qubit::{DensityMatrix, PureQubit, EIGEN_TOL, STRUCTURE_TOL};

/// Largest register the full-tensor routines will materialize.
pub const ORACLE_MAX_QUBITS: usize = 14;

/// Partner of `psi` in its Dicke frame.
pub fn frame_partner(psi: &PureQubit) -> PureQubit {
    // (-beta*, alpha*) is normalized whenever psi is.
    PureQubit::new(-psi.beta().conj(), psi.alpha().conj()).expect("partner of a normalized qubit")
}

/// SU(2) matrix with columns `psi` and its frame partner.
pub fn frame_unitary(psi: &PureQubit) -> Mat2 {
    let p = frame_partner(psi);
    Mat2::new(psi.alpha(), p.alpha(), psi.beta(), p.beta())
}

/// Label of the Dicke state with `total - k` frame qubits and `k` partners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DickeBasisLabel {
    total: usize,
    k: usize,
}

impl DickeBasisLabel {
    pub fn new(total: usize, k: usize) -> Result<Self> {
        if k > total {
            return Err(Error::InvalidParameter(format!(
                "Dicke label k = {k} exceeds total {total}"
            )));
        }
        Ok(Self { total, k })
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// `<k| U^{(x)n} |l>` on the Dicke basis of the computational frame, i.e.
/// the spin-n/2 representation matrix of `u`.
pub fn dicke_rotation(n: usize, u: &Mat2) -> CMatrix {
    // Column l: coefficients of (u00 x + u10 y)^(n-l) (u01 x + u11 y)^l,
    // indexed by the power of y.
    let f0 = [u[(0, 0)], u[(1, 0)]];
    let f1 = [u[(0, 1)], u[(1, 1)]];
    let powers = |f: [C64; 2], p: usize| -> Vec<Vec<C64>> {
        let mut out = Vec::with_capacity(p + 1);
        let mut cur = alloc::vec![ONE];
        out.push(cur.clone());
        for _ in 0..p {
            let mut next = alloc::vec![ZERO; cur.len() + 1];
            for (i, z) in cur.iter().enumerate() {
                next[i] += z * f[0];
                next[i + 1] += z * f[1];
            }
            cur = next;
            out.push(cur.clone());
        }
        out
    };
    let p0 = powers(f0, n);
    let p1 = powers(f1, n);
    let mut d = CMatrix::zeros(n + 1, n + 1);
    for l in 0..=n {
        let a = &p0[n - l];
        let b = &p1[l];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                d[(i + j, l)] += x * y;
            }
        }
        let cl = binomial_real(n as u64, l as u64);
        for k in 0..=n {
            let ck = binomial_real(n as u64, k as u64);
            d[(k, l)] *= re((cl / ck).sqrt());
        }
    }
    d
}

/// Matrix carrying Dicke coefficients in frame `from` to frame `to`.
fn frame_change(n: usize, from: &PureQubit, to: &PureQubit) -> CMatrix {
    dicke_rotation(n, &(frame_unitary(to).adjoint() * frame_unitary(from)))
}

/// Pure state of the symmetric subspace of `total` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeVector {
    frame: PureQubit,
    coeffs: CVector,
}

impl DickeVector {
    /// Checks normalization within [`STRUCTURE_TOL`].
    pub fn new(frame: PureQubit, coeffs: CVector) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "a Dicke vector needs at least one coefficient",
            });
        }
        let norm_sqr = coeffs.norm_squared();
        if (norm_sqr - 1.0).abs() > STRUCTURE_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { frame, coeffs })
    }

    pub fn basis(label: DickeBasisLabel, frame: PureQubit) -> Self {
        let mut coeffs = CVector::zeros(label.total + 1);
        coeffs[label.k] = ONE;
        Self { frame, coeffs }
    }

    pub fn total(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn frame(&self) -> &PureQubit {
        &self.frame
    }

    pub fn coeffs(&self) -> &CVector {
        &self.coeffs
    }

    /// Same state expressed in another frame.
    pub fn in_frame(&self, frame: &PureQubit) -> DickeVector {
        let t = frame_change(self.total(), &self.frame, frame);
        DickeVector {
            frame: *frame,
            coeffs: t * &self.coeffs,
        }
    }

    /// Coefficients on the computational-frame Dicke basis.
    pub fn to_computational(&self) -> DickeVector {
        self.in_frame(&PureQubit::zero())
    }

    /// `<self|other>`, independent of the frames the two are stored in.
    pub fn inner(&self, other: &DickeVector) -> Result<C64> {
        if self.total() != other.total() {
            return Err(Error::ShapeMismatch {
                expected: self.total() + 1,
                got: other.total() + 1,
            });
        }
        let o = other.in_frame(&self.frame);
        Ok(self.coeffs.dotc(&o.coeffs))
    }

    pub fn density(&self) -> SymDensity {
        SymDensity {
            frame: self.frame,
            entries: linalg::outer(&self.coeffs, &self.coeffs),
        }
    }

    /// Full `2^total` register vector (oracle sizes only).
    pub fn embed(&self) -> Result<CVector> {
        let n = self.total();
        check_oracle_size(n)?;
        let mut out = CVector::zeros(1 << n);
        for k in 0..=n {
            if self.coeffs[k] != ZERO {
                out += embed_dicke_unchecked(n, k, &self.frame) * self.coeffs[k];
            }
        }
        Ok(out)
    }
}

/// `|psi>^{(x)n}` in its own frame: `(1, 0, ..., 0)`.
pub fn product_state_in_dicke(psi: &PureQubit, n: usize) -> Result<DickeVector> {
    if n == 0 {
        return Err(Error::InvalidParameter("product state needs N >= 1".into()));
    }
    Ok(DickeVector::basis(DickeBasisLabel { total: n, k: 0 }, *psi))
}

/// `|psi>^{(x)n}` in frame `phi`:
/// `c_k = C(n,k)^{1/2} <phi,psi>^(n-k) <phi_f,psi>^k`.
pub fn product_state_in_frame(psi: &PureQubit, n: usize, frame: &PureQubit) -> Result<DickeVector> {
    if n == 0 {
        return Err(Error::InvalidParameter("product state needs N >= 1".into()));
    }
    let a = frame.inner(psi);
    let b = frame_partner(frame).inner(psi);
    let coeffs = CVector::from_fn(n + 1, |k, _| {
        re(binomial_real(n as u64, k as u64).sqrt()) * a.powu((n - k) as u32) * b.powu(k as u32)
    });
    Ok(DickeVector { frame: *frame, coeffs })
}

fn check_oracle_size(n: usize) -> Result<()> {
    if n > ORACLE_MAX_QUBITS {
        return Err(Error::Capacity {
            what: "full-tensor qubit count",
            value: n,
            limit: ORACLE_MAX_QUBITS,
        });
    }
    Ok(())
}

fn embed_dicke_unchecked(n: usize, k: usize, frame: &PureQubit) -> CVector {
    let amp = re(1.0 / binomial_real(n as u64, k as u64).sqrt());
    let mut v = CVector::from_fn(1 << n, |i, _| {
        if (i as u32).count_ones() as usize == k {
            amp
        } else {
            ZERO
        }
    });
    crate::tensor::apply_to_all(&mut v, n, &frame_unitary(frame));
    v
}

/// Full-register vector of the Dicke state `label` in `frame`.
pub fn embed_dicke(label: DickeBasisLabel, frame: &PureQubit) -> Result<CVector> {
    check_oracle_size(label.total)?;
    Ok(embed_dicke_unchecked(label.total, label.k, frame))
}

/// Density operator on the symmetric subspace of `total` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct SymDensity {
    frame: PureQubit,
    entries: CMatrix,
}

impl SymDensity {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(frame: PureQubit, entries: CMatrix) -> Result<Self> {
        DensityMatrix::new(entries.clone())?;
        Ok(Self { frame, entries })
    }

    pub(crate) fn from_raw(frame: PureQubit, entries: CMatrix) -> Self {
        Self { frame, entries }
    }

    /// `sigma^{(x)n}` for the pure qubit `psi`, stored in frame `psi`.
    pub fn product(psi: &PureQubit, n: usize) -> Self {
        let mut entries = CMatrix::zeros(n + 1, n + 1);
        entries[(0, 0)] = ONE;
        Self { frame: *psi, entries }
    }

    /// `1 / (n + 1)` on the symmetric subspace; the same in every frame.
    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            frame: PureQubit::zero(),
            entries: linalg::identity(n + 1) * re(1.0 / (n + 1) as f64),
        }
    }

    pub fn total(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn frame(&self) -> &PureQubit {
        &self.frame
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn in_frame(&self, frame: &PureQubit) -> SymDensity {
        let t = frame_change(self.total(), &self.frame, frame);
        SymDensity {
            frame: *frame,
            entries: &t * &self.entries * t.adjoint(),
        }
    }

    pub fn to_computational(&self) -> SymDensity {
        self.in_frame(&PureQubit::zero())
    }

    /// Convex combination `w * self + (1 - w) * other`.
    pub fn mix(&self, w: f64, other: &SymDensity) -> Result<SymDensity> {
        if self.total() != other.total() {
            return Err(Error::ShapeMismatch {
                expected: self.total() + 1,
                got: other.total() + 1,
            });
        }
        let o = other.in_frame(&self.frame);
        Ok(SymDensity {
            frame: self.frame,
            entries: &self.entries * re(w) + o.entries * re(1.0 - w),
        })
    }

    /// Checks the density-matrix invariants.
    pub fn validate(&self) -> Result<()> {
        let herm = linalg::hermiticity_defect(&self.entries);
        let tr = linalg::trace(&self.entries);
        if herm > STRUCTURE_TOL || (tr - ONE).norm() > STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!(
                "symmetric density: Hermiticity defect {herm:e}, trace {tr}"
            )));
        }
        let min = linalg::min_eigenvalue(&self.entries);
        if min < EIGEN_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Full `2^n x 2^n` matrix (oracle sizes only).
    pub fn embed(&self) -> Result<CMatrix> {
        let n = self.total();
        check_oracle_size(n)?;
        let basis: Vec<CVector> = (0..=n).map(|k| embed_dicke_unchecked(n, k, &self.frame)).collect();
        let mut b = CMatrix::zeros(1 << n, n + 1);
        for (k, v) in basis.iter().enumerate() {
            b.set_column(k, v);
        }
        Ok(&b * &self.entries * b.adjoint())
    }
}

/// Anything that can be viewed as a density operator on a symmetric subspace.
pub trait SymmetricState {
    fn sym_density(&self) -> SymDensity;
}

impl SymmetricState for DickeVector {
    fn sym_density(&self) -> SymDensity {
        self.density()
    }
}

impl SymmetricState for SymDensity {
    fn sym_density(&self) -> SymDensity {
        self.clone()
    }
}

/// Reduced state of `keep` qubits of a symmetric state, computational basis.
fn reduce(rho: &SymDensity, keep: usize) -> DensityMatrix {
    let n = rho.total();
    let r = keep;
    let dim = 1usize << r;
    let m = &rho.entries;
    let weights: Vec<f64> = (0..=n - r).map(|i| binomial_real((n - r) as u64, i as u64)).collect();
    let norms: Vec<f64> = (0..=n).map(|k| binomial_real(n as u64, k as u64).sqrt()).collect();
    let frame_rho = CMatrix::from_fn(dim, dim, |x, y| {
        let (wx, wy) = (x.count_ones() as usize, y.count_ones() as usize);
        (0..=n - r)
            .map(|i| m[(i + wx, i + wy)] * re(weights[i] / (norms[i + wx] * norms[i + wy])))
            .sum()
    });
    let w = crate::tensor::kron_power(&frame_unitary(&rho.frame), r);
    DensityMatrix::from_raw(&w * frame_rho * w.adjoint())
}

/// Single-qubit marginal; every qubit of a symmetric state has the same one.
pub fn reduce_single_qubit<S: SymmetricState + ?Sized>(state: &S) -> Result<DensityMatrix> {
    let rho = state.sym_density();
    if rho.total() < 1 {
        return Err(Error::InvalidDimension {
            dim: rho.total() + 1,
            reason: "reduction needs at least one qubit",
        });
    }
    Ok(reduce(&rho, 1))
}

/// Two-qubit marginal of a symmetric state.
pub fn reduce_two_qubits<S: SymmetricState + ?Sized>(state: &S) -> Result<DensityMatrix> {
    let rho = state.sym_density();
    if rho.total() < 2 {
        return Err(Error::InvalidDimension {
            dim: rho.total() + 1,
            reason: "two-qubit reduction needs at least two qubits",
        });
    }
    Ok(reduce(&rho, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs};
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn frame_zero_is_computational() {
        let u = frame_unitary(&PureQubit::zero());
        assert!(max_abs(&linalg::mat2_to_dynamic(&(u - Mat2::identity()))) < 1e-15);
    }

    #[test]
    fn small_embeddings() {
        let z = PureQubit::zero();
        let v = embed_dicke(DickeBasisLabel::new(1, 0).unwrap(), &z).unwrap();
        assert_eq!(v.as_slice(), &[ONE, ZERO]);
        let v = embed_dicke(DickeBasisLabel::new(2, 1).unwrap(), &z).unwrap();
        let h = re(FRAC_1_SQRT_2);
        assert!(max_abs(&(v - CVector::from_vec(alloc::vec![ZERO, h, h, ZERO]))) < 1e-15);
        assert!(embed_dicke(DickeBasisLabel::new(15, 3).unwrap(), &z).is_err());
        assert!(DickeBasisLabel::new(2, 3).is_err());
    }

    #[test]
    fn product_state_examples() {
        let d = product_state_in_frame(&PureQubit::zero(), 3, &PureQubit::zero()).unwrap();
        assert!((d.coeffs()[0] - ONE).norm() < 1e-15);
        let d = product_state_in_frame(&PureQubit::plus(), 1, &PureQubit::zero()).unwrap();
        assert!((d.coeffs()[0] - re(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((d.coeffs()[1] - re(FRAC_1_SQRT_2)).norm() < 1e-15);
        let d = product_state_in_frame(&PureQubit::plus(), 2, &PureQubit::zero()).unwrap();
        let want = [0.5, FRAC_1_SQRT_2, 0.5];
        for (k, w) in want.iter().enumerate() {
            assert!((d.coeffs()[k] - re(*w)).norm() < 1e-15);
        }
        assert!(product_state_in_dicke(&PureQubit::plus(), 0).is_err());
    }

    #[test]
    fn rotation_matches_closed_form_product() {
        let psi = PureQubit::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let frame = PureQubit::from_angles(2.1, 0.4);
        for n in 1..7 {
            let a = product_state_in_frame(&psi, n, &frame).unwrap();
            let b = product_state_in_dicke(&psi, n).unwrap().in_frame(&frame);
            assert!(max_abs(&(a.coeffs() - b.coeffs())) < 1e-13, "n={n}");
        }
    }

    #[test]
    fn dicke_rotation_is_unitary() {
        let u = frame_unitary(&PureQubit::from_angles(0.9, -1.3));
        for n in 0..10 {
            let d = dicke_rotation(n, &u);
            assert!(max_abs(&(d.adjoint() * &d - linalg::identity(n + 1))) < 1e-12);
        }
    }

    #[test]
    fn diagonal_single_qubit_reduction() {
        let psi = PureQubit::from_angles(1.2, 0.3);
        let perp = frame_partner(&psi);
        for n in 1..6 {
            for k in 0..=n {
                let d = DickeVector::basis(DickeBasisLabel::new(n, k).unwrap(), psi);
                let r = reduce_single_qubit(&d).unwrap();
                let want = psi.density().into_matrix() * re((n - k) as f64 / n as f64)
                    + perp.density().into_matrix() * re(k as f64 / n as f64);
                assert!(max_abs(&(r.matrix() - want)) < 1e-14);
            }
        }
    }

    #[test]
    fn single_qubit_cross_terms() {
        let psi = PureQubit::from_angles(0.4, 2.2);
        let h = re(FRAC_1_SQRT_2);
        let d = DickeVector::new(psi, CVector::from_vec(alloc::vec![h, h])).unwrap();
        let r = reduce_single_qubit(&d).unwrap();
        let target = PureQubit::normalized(
            psi.alpha() + frame_partner(&psi).alpha(),
            psi.beta() + frame_partner(&psi).beta(),
        )
        .unwrap();
        assert!(r.max_deviation(&target.density()) < 1e-14);
        let in_frame = r.conjugate_by(&linalg::mat2_to_dynamic(&frame_unitary(&psi).adjoint()));
        assert!((in_frame.matrix()[(0, 1)] - re(0.5)).norm() < 1e-14);
    }

    #[test]
    fn too_small_registers_are_rejected() {
        let d = DickeVector::basis(DickeBasisLabel::new(1, 0).unwrap(), PureQubit::zero());
        assert!(reduce_two_qubits(&d).is_err());
        let n2 = DickeVector::basis(DickeBasisLabel::new(2, 1).unwrap(), PureQubit::zero());
        let r = reduce_two_qubits(&n2).unwrap();
        let h = re(FRAC_1_SQRT_2);
        let target = CVector::from_vec(alloc::vec![ZERO, h, h, ZERO]);
        assert!(max_abs(&(r.matrix() - linalg::outer(&target, &target))) < 1e-14);
    }

    #[test]
    fn inner_product_is_frame_independent() {
        let psi = PureQubit::from_angles(0.3, 0.1);
        let phi = PureQubit::from_angles(2.0, -2.0);
        let a = product_state_in_dicke(&psi, 4).unwrap();
        let b = product_state_in_dicke(&phi, 4).unwrap();
        let want = psi.inner(&phi).powu(4);
        assert!((a.inner(&b).unwrap() - want).norm() < 1e-13);
    }
}
