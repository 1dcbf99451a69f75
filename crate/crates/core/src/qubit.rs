//! Single-qubit states, density matrices and small-register operations.

use alloc::format;
use alloc::vec::Vec;

// Needed without std; shadowed by inherent f64 methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float as _;


use crate::error::{Error, Result};
use crate::linalg::{self, c, re, CMatrix, CVector, Mat2, C64, ONE, ZERO};

/// Tolerance for structural checks (normalization, Hermiticity, trace).
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const EIGEN_TOL: f64 = -1e-10;
/// Purity defect below which a density matrix counts as a pure state.
pub const PURITY_TOL: f64 = 1e-9;

/// A normalized pure qubit `alpha|0> + beta|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    alpha: C64,
    beta: C64,
}

impl PureQubit {
    /// Validates `|alpha|^2 + |beta|^2 = 1` within [`STRUCTURE_TOL`].
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        if (norm_sqr - 1.0).abs() > STRUCTURE_TOL || !norm_sqr.is_finite() {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { alpha, beta })
    }

    /// Rescales an arbitrary nonzero amplitude pair.
    pub fn normalized(alpha: C64, beta: C64) -> Result<Self> {
        let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
        if !norm_sqr.is_finite() || norm_sqr <= 0.0 {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let n = re(norm_sqr.sqrt());
        Ok(Self {
            alpha: alpha / n,
            beta: beta / n,
        })
    }

    pub fn from_real(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(re(alpha), re(beta))
    }

    /// Point on the Bloch sphere at polar angle `theta` and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (s, co) = (0.5 * theta).sin_cos();
        Self {
            alpha: re(co),
            beta: C64::from_polar(s, phi),
        }
    }

    pub fn zero() -> Self {
        Self { alpha: ONE, beta: ZERO }
    }

    pub fn one() -> Self {
        Self { alpha: ZERO, beta: ONE }
    }

    pub fn plus() -> Self {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        Self {
            alpha: re(h),
            beta: re(h),
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    pub fn vector(&self) -> CVector {
        CVector::from_vec(alloc::vec![self.alpha, self.beta])
    }

    /// `<self|other>`
    pub fn inner(&self, other: &PureQubit) -> C64 {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }

    /// The ideal (anti-unitary) complement `beta*|0> - alpha*|1>`.
    pub fn complement(&self) -> PureQubit {
        PureQubit {
            alpha: self.beta.conj(),
            beta: -self.alpha.conj(),
        }
    }

    pub fn bloch(&self) -> BlochVector {
        let cross = self.alpha.conj() * self.beta;
        BlochVector {
            x: 2.0 * cross.re,
            y: 2.0 * cross.im,
            z: self.alpha.norm_sqr() - self.beta.norm_sqr(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix {
            entries: linalg::outer(&self.vector(), &self.vector()),
        }
    }

    /// `u|self>`; `u` is assumed unitary.
    pub fn apply(&self, u: &Mat2) -> PureQubit {
        PureQubit {
            alpha: u[(0, 0)] * self.alpha + u[(0, 1)] * self.beta,
            beta: u[(1, 0)] * self.alpha + u[(1, 1)] * self.beta,
        }
    }

    /// Unitary whose columns are `|self>` and its complement. It maps the
    /// computational basis onto the frame `{psi, psi_perp}`.
    pub fn frame_matrix(&self) -> Mat2 {
        let p = self.complement();
        Mat2::new(self.alpha, p.alpha, self.beta, p.beta)
    }
}

/// Ideal complement of a pure qubit; see [`PureQubit::complement`].
pub fn complement(psi: &PureQubit) -> PureQubit {
    psi.complement()
}

/// Expectations of the three Pauli matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if v.norm_sqr() > 1.0 + STRUCTURE_TOL {
            return Err(Error::InvalidParameter(format!(
                "Bloch vector outside the unit ball: |r|^2 = {}",
                v.norm_sqr()
            )));
        }
        Ok(v)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-9
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector {
            x: s * self.x,
            y: s * self.y,
            z: s * self.z,
        }
    }

    pub fn dot(&self, o: &BlochVector) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn distance(&self, o: &BlochVector) -> f64 {
        let d = BlochVector {
            x: self.x - o.x,
            y: self.y - o.y,
            z: self.z - o.z,
        };
        d.norm()
    }

    /// `(1 + r.sigma) / 2`
    pub fn density(&self) -> DensityMatrix {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                re(0.5 * (1.0 + self.z)),
                c(0.5 * self.x, -0.5 * self.y),
                c(0.5 * self.x, 0.5 * self.y),
                re(0.5 * (1.0 - self.z)),
            ],
        );
        DensityMatrix { entries: m }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::InvalidDimension {
                dim: entries.nrows(),
                reason: "density matrix must be square and nonempty",
            });
        }
        let herm = linalg::hermiticity_defect(&entries);
        if herm > STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!("not Hermitian (defect {herm:e})")));
        }
        let tr = linalg::trace(&entries);
        if (tr - ONE).norm() > STRUCTURE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let min = linalg::min_eigenvalue(&entries);
        if min < EIGEN_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { entries })
    }

    /// Skips the checks. Callers guarantee the invariants by construction.
    pub(crate) fn from_raw(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            entries: linalg::identity(dim) * re(1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    pub fn is_pure(&self) -> bool {
        (1.0 - self.purity()).abs() <= PURITY_TOL
    }

    /// `u rho u^dagger`
    pub fn conjugate_by(&self, u: &CMatrix) -> DensityMatrix {
        DensityMatrix {
            entries: u * &self.entries * u.adjoint(),
        }
    }

    /// Bloch vector of a single-qubit density matrix.
    pub fn bloch(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::InvalidDimension {
                dim: self.dim(),
                reason: "Bloch vector needs a 2x2 density matrix",
            });
        }
        let off = self.entries[(0, 1)];
        Ok(BlochVector {
            x: 2.0 * off.re,
            y: -2.0 * off.im,
            z: (self.entries[(0, 0)] - self.entries[(1, 1)]).re,
        })
    }

    /// Trace-norm distance `||self - other||_1`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        linalg::trace_norm(&(&self.entries - &other.entries))
    }

    /// Largest entry deviation from `other`.
    pub fn max_deviation(&self, other: &DensityMatrix) -> f64 {
        linalg::max_abs(&(&self.entries - &other.entries))
    }
}

/// Qubit state of the form `s |d><d| + (1 - s)/2 * 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledStateForm {
    pub direction: PureQubit,
    pub scaling: f64,
}

impl ScaledStateForm {
    pub fn new(direction: PureQubit, scaling: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&scaling) {
            return Err(Error::InvalidParameter(format!("scaling {scaling} outside [-1, 1]")));
        }
        Ok(Self { direction, scaling })
    }

    pub fn density(&self) -> DensityMatrix {
        self.direction.bloch().scale(self.scaling).density()
    }

    /// Fidelity of the represented state with `|direction>`, `(1 + s)/2`.
    pub fn fidelity(&self) -> f64 {
        0.5 * (1.0 + self.scaling)
    }

    /// Best scaled form of `rho` along `direction`, together with the trace
    /// norm of what the scaled form fails to capture.
    pub fn fit(rho: &DensityMatrix, direction: &PureQubit) -> Result<(Self, f64)> {
        if rho.dim() != 2 {
            return Err(Error::InvalidDimension {
                dim: rho.dim(),
                reason: "scaled form is defined for single qubits",
            });
        }
        let overlap = (direction.density().matrix() * rho.matrix()).trace().re;
        let form = Self {
            direction: *direction,
            scaling: (2.0 * overlap - 1.0).clamp(-1.0, 1.0),
        };
        let residual = form.density().trace_distance(rho);
        Ok((form, residual))
    }
}

/// `Tr[a b]` for single-qubit states, at least one of which is pure.
pub fn fidelity(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::InvalidDimension {
            dim: a.dim().max(b.dim()),
            reason: "fidelity is implemented for single qubits",
        });
    }
    if !a.is_pure() && !b.is_pure() {
        return Err(Error::Unsupported("fidelity between two mixed states"));
    }
    Ok((a.matrix() * b.matrix()).trace().re)
}

fn qubit_count(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::InvalidDimension {
            dim,
            reason: "register dimension must be a power of two",
        });
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Sorted, validated, zero-based qubit positions; qubit 1 is the most
/// significant bit of the basis index.
fn keep_positions(qubits: usize, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidSelection("kept qubit set is empty".into()));
    }
    let mut ks: Vec<usize> = keep.to_vec();
    ks.sort_unstable();
    for w in ks.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidSelection(format!("qubit {} listed twice", w[0])));
        }
    }
    if ks[0] == 0 || *ks.last().unwrap() > qubits {
        return Err(Error::InvalidSelection(format!(
            "qubit indices must lie in 1..={qubits}"
        )));
    }
    Ok(ks.into_iter().map(|k| k - 1).collect())
}

/// Splits basis indices into kept and traced parts.
struct Split {
    kept_bits: Vec<usize>,
    traced_bits: Vec<usize>,
}

impl Split {
    fn new(qubits: usize, keep: &[usize]) -> Self {
        // Bit of qubit position p (zero-based, p = 0 is qubit 1).
        let bit = |p: usize| qubits - 1 - p;
        let kept_bits: Vec<usize> = keep.iter().map(|&p| bit(p)).collect();
        let traced_bits = (0..qubits)
            .filter(|p| !keep.contains(p))
            .map(bit)
            .collect();
        Self {
            kept_bits,
            traced_bits,
        }
    }

    /// Full index from a kept index (first kept qubit most significant) and
    /// a traced index.
    fn compose(&self, kept: usize, traced: usize) -> usize {
        let mut idx = 0;
        let r = self.kept_bits.len();
        for (i, &b) in self.kept_bits.iter().enumerate() {
            if (kept >> (r - 1 - i)) & 1 == 1 {
                idx |= 1 << b;
            }
        }
        let t = self.traced_bits.len();
        for (i, &b) in self.traced_bits.iter().enumerate() {
            if (traced >> (t - 1 - i)) & 1 == 1 {
                idx |= 1 << b;
            }
        }
        idx
    }
}

/// Reduced state on the qubits listed in `keep` (one-based).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let q = qubit_count(rho.dim())?;
    let keep = keep_positions(q, keep)?;
    let split = Split::new(q, &keep);
    let kd = 1usize << split.kept_bits.len();
    let td = 1usize << split.traced_bits.len();
    let m = rho.matrix();
    let out = CMatrix::from_fn(kd, kd, |i, j| {
        (0..td)
            .map(|t| m[(split.compose(i, t), split.compose(j, t))])
            .sum()
    });
    Ok(DensityMatrix::from_raw(out))
}

/// Reduced state of the pure register state `psi` on the qubits in `keep`.
pub fn partial_trace_pure(psi: &CVector, keep: &[usize]) -> Result<DensityMatrix> {
    let q = qubit_count(psi.len())?;
    let keep = keep_positions(q, keep)?;
    let split = Split::new(q, &keep);
    let kd = 1usize << split.kept_bits.len();
    let td = 1usize << split.traced_bits.len();
    let mut out = CMatrix::zeros(kd, kd);
    let mut block = CVector::zeros(kd);
    for t in 0..td {
        for i in 0..kd {
            block[i] = psi[split.compose(i, t)];
        }
        out += &block * block.adjoint();
    }
    Ok(DensityMatrix::from_raw(out))
}

/// Partial transpose of a two-qubit matrix on subsystem 1 or 2.
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<CMatrix> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDimension {
            dim: rho.dim(),
            reason: "partial transpose is implemented for two qubits",
        });
    }
    if subsystem != 1 && subsystem != 2 {
        return Err(Error::InvalidSelection(format!("subsystem {subsystem} is not 1 or 2")));
    }
    let m = rho.matrix();
    Ok(CMatrix::from_fn(4, 4, |i, j| {
        let (i1, i2, j1, j2) = (i >> 1, i & 1, j >> 1, j & 1);
        let (a1, a2, b1, b2) = if subsystem == 1 {
            (j1, i2, i1, j2)
        } else {
            (i1, j2, j1, i2)
        };
        m[(2 * a1 + a2, 2 * b1 + b2)]
    }))
}

/// Peres-Horodecki test on two qubits: `(is_ppt, min eigenvalue of the
/// partial transpose)`. For 2x2 systems PPT is equivalent to separability.
pub fn is_ppt(rho: &DensityMatrix) -> Result<(bool, f64)> {
    let pt = partial_transpose(rho, 2)?;
    let min = linalg::min_eigenvalue(&pt);
    Ok((min >= EIGEN_TOL, min))
}

/// `|psi>^{(x)n}` as a full register vector.
pub fn product_vector(psi: &PureQubit, n: usize) -> CVector {
    let mut v = CVector::from_element(1, ONE);
    let q = psi.vector();
    for _ in 0..n {
        v = v.kronecker(&q);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-14
    }

    #[test]
    fn complement_of_basis_states() {
        let z = PureQubit::zero().complement();
        assert!(close(z.alpha(), ZERO) && close(z.beta(), -ONE));
        let o = PureQubit::one().complement();
        assert!(close(o.alpha(), ONE) && close(o.beta(), ZERO));
    }

    #[test]
    fn complement_of_complex_state() {
        let psi = PureQubit::new(c(0.5, 0.5), re(FRAC_1_SQRT_2)).unwrap();
        let out = psi.complement();
        assert!(close(out.alpha(), re(FRAC_1_SQRT_2)));
        assert!(close(out.beta(), c(-0.5, 0.5)));
        assert!(psi.inner(&out).norm() < 1e-15);
    }

    #[test]
    fn unnormalized_input_is_rejected() {
        assert!(matches!(
            PureQubit::new(ONE, ONE),
            Err(Error::NotNormalized { .. })
        ));
        assert!(PureQubit::normalized(ZERO, ZERO).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let zero = PureQubit::zero().density();
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((fidelity(&zero, &mixed).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(fidelity(&mixed, &mixed), Err(Error::Unsupported(_))));

        let psi = PureQubit::from_angles(1.1, -0.4);
        let out = ScaledStateForm::new(psi.complement(), 1.0 / 3.0).unwrap().density();
        assert!((fidelity(&psi.density(), &out).unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn density_validation() {
        let bad = CMatrix::from_row_slice(2, 2, &[re(1.5), ZERO, ZERO, re(-0.5)]);
        assert!(DensityMatrix::new(bad).is_err());
        let skew = CMatrix::from_row_slice(2, 2, &[re(0.5), c(0.0, 0.1), c(0.0, 0.1), re(0.5)]);
        assert!(DensityMatrix::new(skew).is_err());
        assert!(DensityMatrix::new(PureQubit::plus().density().into_matrix()).is_ok());
    }

    #[test]
    fn partial_trace_of_product() {
        let rho = DensityMatrix::new(
            PureQubit::zero()
                .density()
                .matrix()
                .kronecker(PureQubit::one().density().matrix()),
        )
        .unwrap();
        let r2 = partial_trace(&rho, &[2]).unwrap();
        assert!(r2.max_deviation(&PureQubit::one().density()) < 1e-15);
        let r1 = partial_trace(&rho, &[1]).unwrap();
        assert!(r1.max_deviation(&PureQubit::zero().density()) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let h = FRAC_1_SQRT_2;
        let bell = CVector::from_vec(alloc::vec![re(h), ZERO, ZERO, re(h)]);
        let rho = DensityMatrix::new(linalg::outer(&bell, &bell)).unwrap();
        let r = partial_trace(&rho, &[1]).unwrap();
        assert!(r.max_deviation(&DensityMatrix::maximally_mixed(2)) < 1e-15);
        let rp = partial_trace_pure(&bell, &[2]).unwrap();
        assert!(rp.max_deviation(&DensityMatrix::maximally_mixed(2)) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_input() {
        let rho = DensityMatrix::from_raw(linalg::identity(3) * re(1.0 / 3.0));
        assert!(matches!(partial_trace(&rho, &[1]), Err(Error::InvalidDimension { .. })));
        let rho = DensityMatrix::maximally_mixed(4);
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[3]).is_err());
        assert!(partial_trace(&rho, &[1, 1]).is_err());
    }

    #[test]
    fn partial_transpose_examples() {
        let id = DensityMatrix::maximally_mixed(4);
        let pt = partial_transpose(&id, 1).unwrap();
        assert!(linalg::max_abs(&(pt - id.matrix())) < 1e-15);

        let h = FRAC_1_SQRT_2;
        let singlet = CVector::from_vec(alloc::vec![ZERO, re(h), re(-h), ZERO]);
        let rho = DensityMatrix::new(linalg::outer(&singlet, &singlet)).unwrap();
        let (ppt, min) = is_ppt(&rho).unwrap();
        assert!(!ppt);
        assert!((min + 0.5).abs() < 1e-12);
        let pt1 = partial_transpose(&rho, 1).unwrap();
        assert!((linalg::min_eigenvalue(&pt1) + 0.5).abs() < 1e-12);

        let prod = DensityMatrix::from_raw(
            PureQubit::plus()
                .density()
                .matrix()
                .kronecker(PureQubit::from_angles(0.3, 2.0).density().matrix()),
        );
        assert!(is_ppt(&prod).unwrap().0);
        assert!(partial_transpose(&DensityMatrix::maximally_mixed(2), 1).is_err());
        assert!(partial_transpose(&id, 3).is_err());
    }

    #[test]
    fn bloch_round_trip() {
        let psi = PureQubit::from_angles(0.7, 1.9);
        let b = psi.bloch();
        assert!(b.is_pure());
        let from_density = psi.density().bloch().unwrap();
        assert!(b.distance(&from_density) < 1e-14);
        assert!(b.density().max_deviation(&psi.density()) < 1e-14);
    }
}
