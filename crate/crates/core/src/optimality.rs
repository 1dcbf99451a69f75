//! Universal channels from `N` symmetric copies to one qubit.
//!
//! Every rotation-covariant channel `Sym^N -> C^2` is a convex combination
//! of two extremal ones, `T_j(rho) = Tr_j[V rho V^dagger]`, where
//! `V: Sym^N -> C^2 (x) C^{2j+1}` intertwines spin `N/2` with
//! `1/2 (x) j`. Only `j = N/2 - 1/2` and `j = N/2 + 1/2` couple.
//!
//! With Condon-Shortley coefficients, `j = N/2 - 1/2` is the inclusion
//! `Sym^N ⊂ C^2 (x) Sym^{N-1}`: the channel returns one of the input
//! copies and `Tr[sigma T(sigma^N)] = 1`. The other branch,
//! `j = N/2 + 1/2`, attains `1/(N+2)`, the value of the estimate-and-prepare
//! complement.
//!
//! Dicke state `k` of the computational frame is the spin state
//! `m = N/2 - k`, and `|0>` is `m = +1/2`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
// Needed without std; shadowed by inherent f64 methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binom::factorial_f64;
use crate::dicke::{dicke_rotation, product_state_in_frame, SymDensity};
use crate::error::{Error, Result};
use crate::estimation;
use crate::haar::{haar_isometry, haar_pure, haar_unitary};
use crate::linalg::{self, re, CMatrix, Mat2};
use crate::qubit::{DensityMatrix, PureQubit};

/// Half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const fn from_doubled(d: i32) -> Self {
        Self(d)
    }

    pub fn doubled(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `N/2 - 1/2`
    pub fn spin_below(n: usize) -> Self {
        Self(n as i32 - 1)
    }

    /// `N/2 + 1/2`
    pub fn spin_above(n: usize) -> Self {
        Self(n as i32 + 1)
    }
}

impl core::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `<j1 m1; j2 m2 | j m>` by Racah's formula, Condon-Shortley phases.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    let (j1, m1, j2, m2, j, m) = (j1.0, m1.0, j2.0, m2.0, j.0, m.0);
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return 0.0;
    }
    if j < (j1 - j2).abs() || j > j1 + j2 {
        return 0.0;
    }
    // Every argument below must be an even doubled value, i.e. an integer.
    let half = |x: i32| -> Option<u64> {
        if x < 0 || x % 2 != 0 {
            None
        } else {
            Some((x / 2) as u64)
        }
    };
    let args = [
        j1 + j2 - j,
        j1 - j2 + j,
        -j1 + j2 + j,
        j1 + j2 + j + 2,
        j1 + m1,
        j1 - m1,
        j2 + m2,
        j2 - m2,
        j + m,
        j - m,
    ];
    let Some(h) = args.iter().map(|&x| half(x)).collect::<Option<Vec<u64>>>() else {
        return 0.0;
    };
    let f = factorial_f64;
    let pre = ((j + 1) as f64 * f(h[0]) * f(h[1]) * f(h[2]) / f(h[3])).sqrt()
        * (f(h[4]) * f(h[5]) * f(h[6]) * f(h[7]) * f(h[8]) * f(h[9])).sqrt();
    // Integer forms of the sum bounds.
    let a = (j1 + j2 - j) / 2;
    let b = (j1 - m1) / 2;
    let cc = (j2 + m2) / 2;
    let d = (j - j2 + m1) / 2;
    let e = (j - j1 - m2) / 2;
    let kmin = 0.max(-d).max(-e);
    let kmax = a.min(b).min(cc);
    let mut sum = 0.0;
    for k in kmin..=kmax {
        let den = f(k as u64)
            * f((a - k) as u64)
            * f((b - k) as u64)
            * f((cc - k) as u64)
            * f((d + k) as u64)
            * f((e + k) as u64);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / den;
    }
    pre * sum
}

/// Isometry `Sym^N -> C^2 (x) C^{2j+1}` intertwining spin `N/2` with
/// `1/2 (x) j`. Row `a (2j+1) + mu` is qubit `a` (`m1 = 1/2 - a`) and spin
/// state `m2 = j - mu`; column `k` is Dicke state `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CGIntertwiner {
    n: usize,
    j: HalfInt,
    v: CMatrix,
}

impl CGIntertwiner {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> HalfInt {
        self.j
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.v
    }

    /// Dimension `2j + 1` of the traced-out factor.
    pub fn env_dim(&self) -> usize {
        (self.j.0 + 1) as usize
    }

    /// `max |V^dagger V - 1|`
    pub fn isometry_defect(&self) -> f64 {
        linalg::max_abs(&(self.v.adjoint() * &self.v - linalg::identity(self.n + 1)))
    }

    /// `max |V D_{N/2}(u) - (u (x) D_j(u)) V|` for `u` in SU(2).
    pub fn intertwining_defect(&self, u: &Mat2) -> f64 {
        let lhs = &self.v * dicke_rotation(self.n, u);
        let rhs = linalg::mat2_to_dynamic(u).kronecker(&dicke_rotation(self.j.0 as usize, u)) * &self.v;
        linalg::max_abs(&(lhs - rhs))
    }
}

pub fn build_intertwiner(n: usize, j: HalfInt) -> Result<CGIntertwiner> {
    if n == 0 || j.0 < 0 || (j != HalfInt::spin_below(n) && j != HalfInt::spin_above(n)) {
        return Err(Error::InvalidSpin {
            doubled: j.0.max(0) as u32,
            n,
        });
    }
    let dj = j.0 as usize + 1;
    let big = HalfInt(n as i32);
    let half = HalfInt(1);
    let v = CMatrix::from_fn(2 * dj, n + 1, |row, k| {
        let (a, mu) = (row / dj, row % dj);
        let m1 = HalfInt(1 - 2 * a as i32);
        let m2 = HalfInt(j.0 - 2 * mu as i32);
        let m = HalfInt(n as i32 - 2 * k as i32);
        re(clebsch_gordan(half, m1, j, m2, big, m))
    });
    Ok(CGIntertwiner { n, j, v })
}

/// A channel from the symmetric subspace of `N` qubits to one qubit.
pub trait Channel {
    fn input_qubits(&self) -> usize;

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix>;

    /// `Tr[sigma T(sigma^N)]` for `sigma = |psi><psi|`.
    fn fidelity_with_input(&self, psi: &PureQubit) -> Result<f64> {
        let out = self.apply(&SymDensity::product(psi, self.input_qubits()))?;
        Ok((psi.density().matrix() * out.matrix()).trace().re)
    }
}

impl<C: Channel + ?Sized> Channel for &C {
    fn input_qubits(&self) -> usize {
        (**self).input_qubits()
    }
    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        (**self).apply(rho)
    }
    fn fidelity_with_input(&self, psi: &PureQubit) -> Result<f64> {
        (**self).fidelity_with_input(psi)
    }
}

impl<C: Channel + ?Sized> Channel for Box<C> {
    fn input_qubits(&self) -> usize {
        (**self).input_qubits()
    }
    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        (**self).apply(rho)
    }
    fn fidelity_with_input(&self, psi: &PureQubit) -> Result<f64> {
        (**self).fidelity_with_input(psi)
    }
}

fn check_shape(expected: usize, rho: &SymDensity) -> Result<()> {
    if rho.total() != expected {
        return Err(Error::ShapeMismatch {
            expected: expected + 1,
            got: rho.total() + 1,
        });
    }
    Ok(())
}

/// `Tr_E[V rho V^dagger]` for an isometry `V: C^{N+1} -> C^2 (x) C^E`
/// acting on computational-frame Dicke coefficients.
fn stinespring_apply(v: &CMatrix, env: usize, rho: &SymDensity) -> DensityMatrix {
    let r = rho.to_computational();
    let big = v * r.entries() * v.adjoint();
    let out = CMatrix::from_fn(2, 2, |a, b| (0..env).map(|mu| big[(a * env + mu, b * env + mu)]).sum());
    DensityMatrix::from_raw(out)
}

/// Extremal universal channel built from a Clebsch-Gordan intertwiner.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalChannel {
    iso: CGIntertwiner,
}

impl ExtremalChannel {
    pub fn new(n: usize, j: HalfInt) -> Result<Self> {
        Ok(Self {
            iso: build_intertwiner(n, j)?,
        })
    }

    pub fn intertwiner(&self) -> &CGIntertwiner {
        &self.iso
    }
}

impl Channel for ExtremalChannel {
    fn input_qubits(&self) -> usize {
        self.iso.n
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        extremal_channel_apply(&self.iso, rho)
    }
}

pub fn extremal_channel_apply(v: &CGIntertwiner, rho: &SymDensity) -> Result<DensityMatrix> {
    check_shape(v.n, rho)?;
    Ok(stinespring_apply(&v.v, v.env_dim(), rho))
}

/// The estimate-and-prepare complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimateAndPrepare {
    pub n: usize,
}

impl Channel for EstimateAndPrepare {
    fn input_qubits(&self) -> usize {
        self.n
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        check_shape(self.n, rho)?;
        Ok(estimation::classical_channel(rho))
    }
}

/// Returns the marginal of one input copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeepOneCopy {
    pub n: usize,
}

impl Channel for KeepOneCopy {
    fn input_qubits(&self) -> usize {
        self.n
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        check_shape(self.n, rho)?;
        crate::dicke::reduce_single_qubit(rho)
    }
}

/// Discards its input and prepares a fixed state.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantChannel {
    pub n: usize,
    pub out: DensityMatrix,
}

impl Channel for ConstantChannel {
    fn input_qubits(&self) -> usize {
        self.n
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        check_shape(self.n, rho)?;
        Ok(self.out.clone())
    }
}

/// General channel in Stinespring form.
#[derive(Debug, Clone, PartialEq)]
pub struct StinespringChannel {
    n: usize,
    env: usize,
    v: CMatrix,
}

impl StinespringChannel {
    /// `v` must be an isometry `C^{N+1} -> C^2 (x) C^env`.
    pub fn new(n: usize, env: usize, v: CMatrix) -> Result<Self> {
        if v.nrows() != 2 * env || v.ncols() != n + 1 {
            return Err(Error::ShapeMismatch {
                expected: 2 * env * (n + 1),
                got: v.nrows() * v.ncols(),
            });
        }
        let defect = linalg::max_abs(&(v.adjoint() * &v - linalg::identity(n + 1)));
        if defect > 1e-10 {
            return Err(Error::InvalidParameter(alloc::format!(
                "Stinespring operator is not an isometry (defect {defect:e})"
            )));
        }
        Ok(Self { n, env, v })
    }

    /// Channel with a Haar-random Stinespring isometry.
    pub fn random(n: usize, env: usize, seed: u64) -> Result<Self> {
        if 2 * env < n + 1 {
            return Err(Error::InvalidDimension {
                dim: 2 * env,
                reason: "Stinespring space smaller than the input",
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = haar_isometry(&mut rng, 2 * env, n + 1);
        Ok(Self { n, env, v })
    }
}

impl Channel for StinespringChannel {
    fn input_qubits(&self) -> usize {
        self.n
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        check_shape(self.n, rho)?;
        Ok(stinespring_apply(&self.v, self.env, rho))
    }

    fn fidelity_with_input(&self, psi: &PureQubit) -> Result<f64> {
        let c = product_state_in_frame(psi, self.n, &PureQubit::zero())?;
        let w = &self.v * c.coeffs();
        let (a, b) = (psi.alpha(), psi.beta());
        // <psi| Tr_E |w><w| |psi> = sum_mu |a* w[0,mu] + b* w[1,mu]|^2
        Ok((0..self.env)
            .map(|mu| (a.conj() * w[mu] + b.conj() * w[self.env + mu]).norm_sqr())
            .sum())
    }
}

/// Convex combination of channels on the same input size.
pub struct MixtureChannel {
    n: usize,
    parts: Vec<(f64, Box<dyn Channel>)>,
}

impl MixtureChannel {
    pub fn new(parts: Vec<(f64, Box<dyn Channel>)>) -> Result<Self> {
        let Some(n) = parts.first().map(|(_, c)| c.input_qubits()) else {
            return Err(Error::InvalidParameter("empty mixture".into()));
        };
        let total: f64 = parts.iter().map(|(w, _)| *w).sum();
        if parts.iter().any(|(w, c)| *w < 0.0 || c.input_qubits() != n) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(
                "mixture weights must be a probability vector over equal-size channels".into(),
            ));
        }
        Ok(Self { n, parts })
    }

    pub fn weights(&self) -> Vec<f64> {
        self.parts.iter().map(|(w, _)| *w).collect()
    }
}

impl Channel for MixtureChannel {
    fn input_qubits(&self) -> usize {
        self.n
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        let mut acc = CMatrix::zeros(2, 2);
        for (w, c) in &self.parts {
            acc += c.apply(rho)?.into_matrix() * re(*w);
        }
        Ok(DensityMatrix::from_raw(acc))
    }

    fn fidelity_with_input(&self, psi: &PureQubit) -> Result<f64> {
        let mut acc = 0.0;
        for (w, c) in &self.parts {
            acc += w * c.fidelity_with_input(psi)?;
        }
        Ok(acc)
    }
}

/// `u^{(x)N} rho u^{dagger (x)N}` on the symmetric subspace.
pub fn rotate_input(rho: &SymDensity, u: &Mat2) -> SymDensity {
    let r = rho.to_computational();
    let d = dicke_rotation(rho.total(), u);
    SymDensity::from_raw(PureQubit::zero(), &d * r.entries() * d.adjoint())
}

/// `T_u(rho) = u^dagger T(u^N rho u^{dagger N}) u`.
pub struct RotatedChannel<C> {
    pub inner: C,
    pub u: Mat2,
}

impl<C: Channel> Channel for RotatedChannel<C> {
    fn input_qubits(&self) -> usize {
        self.inner.input_qubits()
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        let out = self.inner.apply(&rotate_input(rho, &self.u))?;
        Ok(out.conjugate_by(&linalg::mat2_to_dynamic(&self.u.adjoint())))
    }
}

/// Monte Carlo average of `T_u` over Haar-random `u`.
pub struct TwirledChannel<C> {
    inner: C,
    unitaries: Vec<Mat2>,
}

/// Fewest unitaries accepted by [`twirl_channel`].
pub const MIN_TWIRL_SAMPLES: usize = 1000;

pub fn twirl_channel<C: Channel>(channel: C, samples: usize, seed: u64) -> Result<TwirledChannel<C>> {
    if samples < MIN_TWIRL_SAMPLES {
        return Err(Error::InvalidParameter(alloc::format!(
            "twirl needs at least {MIN_TWIRL_SAMPLES} samples, got {samples}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unitaries = (0..samples).map(|_| haar_unitary(&mut rng)).collect();
    Ok(TwirledChannel {
        inner: channel,
        unitaries,
    })
}

impl<C: Channel> TwirledChannel<C> {
    pub fn samples(&self) -> usize {
        self.unitaries.len()
    }

    /// Mean and standard error of `Tr[sigma T_u(sigma^N)]` over the sampled
    /// unitaries. Uses `Tr[sigma T_u(sigma^N)] = f_T(u psi)`.
    pub fn fidelity_stats(&self, psi: &PureQubit) -> Result<(f64, f64)> {
        let mut sum = 0.0;
        let mut sq = 0.0;
        for u in &self.unitaries {
            let f = self.inner.fidelity_with_input(&psi.apply(u))?;
            sum += f;
            sq += f * f;
        }
        let s = self.unitaries.len() as f64;
        let mean = sum / s;
        let var = ((sq - s * mean * mean) / (s - 1.0)).max(0.0);
        Ok((mean, (var / s).sqrt()))
    }
}

impl<C: Channel> Channel for TwirledChannel<C> {
    fn input_qubits(&self) -> usize {
        self.inner.input_qubits()
    }

    fn apply(&self, rho: &SymDensity) -> Result<DensityMatrix> {
        let mut acc = CMatrix::zeros(2, 2);
        for u in &self.unitaries {
            let out = self.inner.apply(&rotate_input(rho, u))?;
            acc += out.conjugate_by(&linalg::mat2_to_dynamic(&u.adjoint())).into_matrix();
        }
        Ok(DensityMatrix::from_raw(acc * re(1.0 / self.unitaries.len() as f64)))
    }

    fn fidelity_with_input(&self, psi: &PureQubit) -> Result<f64> {
        Ok(self.fidelity_stats(psi)?.0)
    }
}

/// Nodes and weights of `n`-point Gauss-Legendre quadrature on `[-1, 1]`
/// (Golub-Welsch).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jm = DMatrix::<f64>::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            let k = i.max(j) as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jm);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Exact average of `Tr[sigma T(sigma^N)]` over the Bloch sphere.
///
/// The integrand is a polynomial of degree `N + 1` in the Bloch vector, so
/// Gauss-Legendre in `cos(theta)` times an equispaced azimuthal rule
/// integrates it exactly.
pub fn average_fidelity<C: Channel + ?Sized>(channel: &C) -> Result<f64> {
    let n = channel.input_qubits();
    let (zs, ws) = gauss_legendre(n / 2 + 1 + 1);
    let az = n + 3;
    let mut acc = 0.0;
    for (z, w) in zs.iter().zip(&ws) {
        let theta = z.clamp(-1.0, 1.0).acos();
        for l in 0..az {
            let phi = core::f64::consts::TAU * l as f64 / az as f64;
            acc += w * channel.fidelity_with_input(&PureQubit::from_angles(theta, phi))?;
        }
    }
    Ok(acc / (2.0 * az as f64))
}

/// The exact twirl, as a mixture of the two extremal universal channels.
pub fn exact_twirl<C: Channel + ?Sized>(channel: &C) -> Result<MixtureChannel> {
    let n = channel.input_qubits();
    let f = average_fidelity(channel)?;
    let low = 1.0 / (n as f64 + 2.0);
    let keep = ((f - low) / (1.0 - low)).clamp(0.0, 1.0);
    MixtureChannel::new(alloc::vec![
        (keep, Box::new(ExtremalChannel::new(n, HalfInt::spin_below(n))?) as Box<dyn Channel>),
        (1.0 - keep, Box::new(ExtremalChannel::new(n, HalfInt::spin_above(n))?)),
    ])
}

/// Worst-case overlap of a channel output with its input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaEstimate {
    pub delta: f64,
    pub argmax: PureQubit,
}

fn golden_max<F: FnMut(f64) -> Result<f64>>(mut f: F, lo: f64, hi: f64, iters: usize) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}

/// `max_sigma Tr[sigma T(sigma^N)]` over Haar probes, refined by
/// golden-section line searches in the polar and azimuthal angles around
/// the best probe.
pub fn delta_of_channel<C: Channel + ?Sized>(channel: &C, n_probes: usize, seed: u64) -> Result<DeltaEstimate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (f64::NEG_INFINITY, PureQubit::zero());
    for _ in 0..n_probes.max(1) {
        let psi = haar_pure(&mut rng);
        let f = channel.fidelity_with_input(&psi)?;
        if f > best.0 {
            best = (f, psi);
        }
    }
    let b = best.1.bloch();
    let mut theta = b.z.clamp(-1.0, 1.0).acos();
    let mut phi = b.y.atan2(b.x);
    let mut width = 0.5;
    for _ in 0..3 {
        let (t, ft) = golden_max(
            |t| channel.fidelity_with_input(&PureQubit::from_angles(t, phi)),
            theta - width,
            theta + width,
            20,
        )?;
        if ft > best.0 {
            best = (ft, PureQubit::from_angles(t, phi));
            theta = t;
        }
        let (p, fp) = golden_max(
            |p| channel.fidelity_with_input(&PureQubit::from_angles(theta, p)),
            phi - width,
            phi + width,
            20,
        )?;
        if fp > best.0 {
            best = (fp, PureQubit::from_angles(theta, p));
            phi = p;
        }
        width *= 0.5;
    }
    Ok(DeltaEstimate {
        delta: best.0,
        argmax: best.1,
    })
}

/// Error value and input-independence profile of one extremal channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalChannelReport {
    pub j: HalfInt,
    pub delta: f64,
    pub fidelity_profile: Vec<(PureQubit, f64)>,
}

impl ExtremalChannelReport {
    /// Spread `max - min` of the profile.
    pub fn profile_spread(&self) -> f64 {
        let (lo, hi) = self
            .fidelity_profile
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, f)| (lo.min(*f), hi.max(*f)));
        hi - lo
    }
}

pub fn extremal_channel_report(n: usize, j: HalfInt, probes: usize, seed: u64) -> Result<ExtremalChannelReport> {
    let ch = ExtremalChannel::new(n, j)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fidelity_profile = (0..probes.max(1))
        .map(|_| {
            let psi = haar_pure(&mut rng);
            Ok((psi, ch.fidelity_with_input(&psi)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = fidelity_profile.iter().fold(f64::NEG_INFINITY, |m, (_, f)| m.max(*f));
    Ok(ExtremalChannelReport {
        j,
        delta,
        fidelity_profile,
    })
}
