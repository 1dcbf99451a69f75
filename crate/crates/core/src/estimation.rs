//! Measurement-based complementation: estimate the input state from `N`
//! copies, then prepare the complement of the estimate.
//!
//! For input `rho` on the symmetric subspace the estimate has density
//! `p(phi) = (N+1) <phi^N| rho |phi^N>` against the uniform measure, and the
//! re-prepared output is `T(rho) = int dphi p(phi) (1 - |phi><phi|)`.
//! Because `int dphi |phi><phi|^{(x)(N+1)} = P_sym / (N+2)`, the channel has
//! the closed form
//!
//! ```text
//! T(rho) = Tr[rho] 1 - (N+1)/(N+2) Tr_{1..N}[(rho (x) 1) P_sym^{N+1}]
//! ```

use alloc::vec::Vec;

use num_rational::Ratio;
// Needed without std; shadowed by inherent f64 methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float as _;

use crate::binom::binomial_real;
use crate::dicke::{self, frame_unitary, product_state_in_frame, SymDensity, SymmetricState};
use crate::error::{Error, Result};
use crate::gate::{not_scaling_exact, ratio_to_f64};
use crate::haar::{haar_pure, SampleStream};
use crate::linalg::{self, re, CMatrix};
use crate::qubit::{DensityMatrix, PureQubit, ScaledStateForm};

/// Fewest samples accepted by the Monte Carlo estimator.
pub const MIN_MC_SAMPLES: usize = 10_000;
/// Largest number of outputs for which the joint output state is built.
pub const MAX_JOINT_OUTPUTS: usize = 6;

/// Probability density of the estimated state for a given input.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimationDensity {
    rho: SymDensity,
}

impl EstimationDensity {
    pub fn new(rho: SymDensity) -> Result<Self> {
        if rho.total() == 0 {
            return Err(Error::InvalidParameter("estimation needs N >= 1".into()));
        }
        Ok(Self { rho })
    }

    /// Density for `N` copies of `psi`.
    pub fn for_product(psi: &PureQubit, n: usize) -> Result<Self> {
        Self::new(SymDensity::product(psi, n))
    }

    pub fn n(&self) -> usize {
        self.rho.total()
    }

    /// `(N+1) <phi^N| rho |phi^N>`
    pub fn at(&self, phi: &PureQubit) -> f64 {
        let v = product_state_in_frame(phi, self.n(), self.rho.frame())
            .expect("N >= 1 checked at construction");
        let c = v.coeffs();
        let q = (c.adjoint() * self.rho.entries() * c)[(0, 0)].re;
        (self.n() as f64 + 1.0) * q
    }
}

/// `(N+1) |<phi, psi>|^{2N}`
pub fn estimation_density_at(phi: &PureQubit, psi: &PureQubit, n: usize) -> f64 {
    (n as f64 + 1.0) * phi.inner(psi).norm_sqr().powi(n as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationOutput {
    pub out: DensityMatrix,
    /// Overlap of the output with the input, `Tr[sigma out]`.
    pub delta: f64,
    /// Exact value when computed analytically.
    pub delta_exact: Option<Ratio<u64>>,
    /// Standard error of `delta`; zero for the analytic path.
    pub stderr: f64,
    pub method: Method,
    pub samples: usize,
}

impl EstimationOutput {
    pub fn fidelity(&self) -> f64 {
        1.0 - self.delta
    }
}

/// Exact output for `N` copies of `psi`: the scaled form with
/// `s_N = N/(N+2)` along the complement, and `delta = 1/(N+2)`.
pub fn classical_unot_analytic(psi: &PureQubit, n: usize) -> Result<EstimationOutput> {
    if n == 0 {
        return Err(Error::InvalidParameter("estimation needs N >= 1".into()));
    }
    let s = not_scaling_exact(n);
    let delta = (Ratio::from_integer(1) - s) / 2;
    Ok(EstimationOutput {
        out: ScaledStateForm {
            direction: psi.complement(),
            scaling: ratio_to_f64(s),
        }
        .density(),
        delta: ratio_to_f64(delta),
        delta_exact: Some(delta),
        stderr: 0.0,
        method: Method::Analytic,
        samples: 0,
    })
}

/// Channel output for an arbitrary input on the symmetric subspace.
pub fn classical_channel<S: SymmetricState + ?Sized>(state: &S) -> DensityMatrix {
    let rho = state.sym_density();
    let n = rho.total();
    // Isometry Sym^{N+1} -> Sym^N (x) C^2 splitting off the last qubit:
    // |D_k> = sqrt((N+1-k)/(N+1)) |D_k>|0> + sqrt(k/(N+1)) |D_{k-1}>|1>.
    let mut split = CMatrix::zeros(2 * (n + 1), n + 2);
    let np1 = (n + 1) as f64;
    for k in 0..=n + 1 {
        if k <= n {
            split[(2 * k, k)] = re(((np1 - k as f64) / np1).sqrt());
        }
        if k >= 1 {
            split[(2 * (k - 1) + 1, k)] = re((k as f64 / np1).sqrt());
        }
    }
    let lifted = rho.entries().kronecker(&linalg::identity(2));
    let m = lifted * &split * split.adjoint();
    let q = CMatrix::from_fn(2, 2, |a, b| (0..=n).map(|k| m[(2 * k + a, 2 * k + b)]).sum());
    let tr = linalg::trace(rho.entries());
    let frame_out = linalg::identity(2) * tr - q * re(np1 / (np1 + 1.0));
    let w = linalg::mat2_to_dynamic(&frame_unitary(rho.frame()));
    DensityMatrix::from_raw(&w * frame_out * w.adjoint())
}

/// Monte Carlo evaluation of the estimate-and-prepare integral over
/// Haar-random `phi`.
///
/// Uses the self-normalized estimator `sum_i p_i f(phi_i) / sum_i p_i`,
/// so the output has unit trace exactly; `stderr` is the delta-method
/// standard error of the ratio.
pub fn classical_unot_montecarlo(
    psi: &PureQubit,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<EstimationOutput> {
    if n == 0 {
        return Err(Error::InvalidParameter("estimation needs N >= 1".into()));
    }
    if samples < MIN_MC_SAMPLES {
        return Err(Error::InvalidParameter(alloc::format!(
            "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {samples}"
        )));
    }
    let stream = SampleStream::new(seed, samples);
    let mut weight_sum = 0.0;
    let mut acc = CMatrix::zeros(2, 2);
    let mut ws: Vec<f64> = Vec::with_capacity(samples);
    let mut ds: Vec<f64> = Vec::with_capacity(samples);
    stream.for_each(|rng| {
        let phi = haar_pure(rng);
        let overlap = phi.inner(psi).norm_sqr();
        let w = (n as f64 + 1.0) * overlap.powi(n as i32);
        weight_sum += w;
        acc += (linalg::identity(2) - phi.density().into_matrix()) * re(w);
        ws.push(w);
        ds.push(w * (1.0 - overlap));
    });
    let out = acc * re(1.0 / weight_sum);
    let delta = ds.iter().sum::<f64>() / weight_sum;
    let mean_w = weight_sum / samples as f64;
    let var: f64 = ws
        .iter()
        .zip(&ds)
        .map(|(w, d)| {
            let r = d - delta * w;
            r * r
        })
        .sum::<f64>()
        / (samples as f64 - 1.0);
    let stderr = (var / samples as f64).sqrt() / mean_w;
    Ok(EstimationOutput {
        out: DensityMatrix::from_raw(out),
        delta,
        delta_exact: None,
        stderr,
        method: Method::MonteCarlo,
        samples,
    })
}

/// Output of the estimate-and-prepare scheme that writes `M` copies of the
/// estimated complement.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiOutput {
    /// Marginal of each output qubit.
    pub singles: Vec<DensityMatrix>,
    /// Joint state of the `M` outputs in the Dicke basis, frame `psi`.
    pub joint: SymDensity,
}

/// Joint output `(N+1) int dphi |<phi,psi>|^{2N} |phi_perp><phi_perp|^{(x)M}`.
///
/// Writing `phi = a psi + b psi_f`, the phase average makes the joint state
/// diagonal in the Dicke basis and the remaining Beta integral gives
/// `rho[k,k] = (N+1) C(M,k) / ((N+M+1) C(N+M, N+k))`, where `k` counts
/// factors along the complement direction.
pub fn classical_multi_output(psi: &PureQubit, n: usize, m: usize) -> Result<MultiOutput> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("needs N >= 1 and M >= 1".into()));
    }
    if m > MAX_JOINT_OUTPUTS {
        return Err(Error::Capacity {
            what: "M for the joint output state",
            value: m,
            limit: MAX_JOINT_OUTPUTS,
        });
    }
    let (nu, mu) = (n as u64, m as u64);
    let diag: Vec<f64> = (0..=mu)
        .map(|k| {
            (nu as f64 + 1.0) * binomial_real(mu, k)
                / ((nu + mu + 1) as f64 * binomial_real(nu + mu, nu + k))
        })
        .collect();
    let entries = CMatrix::from_fn(m + 1, m + 1, |i, j| if i == j { re(diag[i]) } else { linalg::ZERO });
    let joint = SymDensity::new(*psi, entries)?;
    let single = dicke::reduce_single_qubit(&joint)?;
    Ok(MultiOutput {
        singles: alloc::vec![single; m],
        joint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_peak_and_zero() {
        let psi = PureQubit::from_angles(0.9, 0.2);
        assert!((estimation_density_at(&psi, &psi, 4) - 5.0).abs() < 1e-13);
        assert!(estimation_density_at(&psi.complement(), &psi, 4) < 1e-13);
        let d = EstimationDensity::for_product(&psi, 4).unwrap();
        let phi = PureQubit::from_angles(2.0, -1.0);
        assert!((d.at(&phi) - estimation_density_at(&phi, &psi, 4)).abs() < 1e-13);
    }

    #[test]
    fn analytic_values() {
        let psi = PureQubit::from_angles(0.4, 0.5);
        let e1 = classical_unot_analytic(&psi, 1).unwrap();
        assert_eq!(e1.delta_exact, Some(Ratio::new(1, 3)));
        assert!((e1.fidelity() - 2.0 / 3.0).abs() < 1e-15);
        let e4 = classical_unot_analytic(&psi, 4).unwrap();
        assert_eq!(e4.delta_exact, Some(Ratio::new(1, 6)));
        let big = classical_unot_analytic(&psi, 1000).unwrap();
        let (form, _) = ScaledStateForm::fit(&big.out, &psi.complement()).unwrap();
        assert!(1.0 - form.scaling <= 2.0 / 1002.0 + 1e-15);
    }

    #[test]
    fn general_channel_matches_analytic_on_products() {
        let psi = PureQubit::from_angles(1.9, -0.7);
        for n in 1..8 {
            let a = classical_unot_analytic(&psi, n).unwrap();
            let b = classical_channel(&SymDensity::product(&psi, n));
            assert!(a.out.max_deviation(&b) < 1e-13, "N={n}");
        }
    }

    #[test]
    fn maximally_mixed_input_gives_maximally_mixed_output() {
        for n in 1..6 {
            let out = classical_channel(&SymDensity::maximally_mixed(n));
            assert!(out.max_deviation(&DensityMatrix::maximally_mixed(2)) < 1e-14);
        }
    }

    #[test]
    fn small_sample_counts_are_rejected() {
        assert!(classical_unot_montecarlo(&PureQubit::zero(), 1, 100, 0).is_err());
    }

    #[test]
    fn multi_output_single_marginals() {
        let psi = PureQubit::from_angles(0.3, 0.3);
        let single = classical_multi_output(&psi, 3, 1).unwrap();
        let a = classical_unot_analytic(&psi, 3).unwrap();
        assert!(single.singles[0].max_deviation(&a.out) < 1e-14);
        let three = classical_multi_output(&psi, 1, 3).unwrap();
        for s in &three.singles {
            let f = 1.0 - (psi.density().matrix() * s.matrix()).trace().re;
            assert!((f - 2.0 / 3.0).abs() < 1e-14);
        }
        assert!(classical_multi_output(&psi, 1, 7).is_err());
    }
}
