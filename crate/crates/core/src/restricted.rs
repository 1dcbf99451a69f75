//! Qubits with real amplitudes, where an exact NOT exists.

use alloc::format;

// Needed without std; shadowed by inherent f64 methods when std is linked.
#[allow(unused_imports)]
use num_traits::Float as _;

use crate::binom::binomial;
use crate::error::{Error, Result};
use crate::qubit::{BlochVector, PureQubit, STRUCTURE_TOL};

/// Pure qubit `alpha |0> + beta |1>` with real amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealQubit {
    alpha: f64,
    beta: f64,
}

impl RealQubit {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let norm_sqr = alpha * alpha + beta * beta;
        if (norm_sqr - 1.0).abs() > STRUCTURE_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { alpha, beta })
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self { alpha: c, beta: s }
    }

    /// Fails unless both amplitudes are real up to `1e-12`.
    pub fn from_pure(psi: &PureQubit) -> Result<Self> {
        let (a, b) = (psi.alpha(), psi.beta());
        if a.im.abs() > STRUCTURE_TOL || b.im.abs() > STRUCTURE_TOL {
            return Err(Error::InvalidParameter(format!(
                "amplitudes ({a}, {b}) are not real"
            )));
        }
        Self::new(a.re, b.re)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn to_pure(&self) -> PureQubit {
        PureQubit::from_real(self.alpha, self.beta).expect("normalized on construction")
    }

    pub fn inner(&self, other: &RealQubit) -> f64 {
        self.alpha * other.alpha + self.beta * other.beta
    }

    pub fn bloch(&self) -> BlochVector {
        self.to_pure().bloch()
    }
}

/// `(alpha, beta) -> (beta, -alpha)`, the amplitude matrix `((0,1),(-1,0))`.
pub fn perfect_real_not(psi: &RealQubit) -> RealQubit {
    RealQubit {
        alpha: psi.beta,
        beta: -psi.alpha,
    }
}

/// [`perfect_real_not`] on a general qubit; rejects complex amplitudes.
pub fn perfect_real_not_checked(psi: &PureQubit) -> Result<RealQubit> {
    Ok(perfect_real_not(&RealQubit::from_pure(psi)?))
}

fn sqrt_binomial_pair(n: u64, j: u64) -> f64 {
    match (binomial(n, j), binomial(n, j + 1)) {
        (Ok(a), Ok(b)) => (a as f64).sqrt() * (b as f64).sqrt() / 2f64.powi(n as i32 + 1),
        _ => {
            // ln C(n, j), built term by term
            let ln_c = |k: u64| (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum::<f64>();
            (0.5 * (ln_c(j) + ln_c(j + 1)) - (n + 1) as f64 * core::f64::consts::LN_2).exp()
        }
    }
}

/// Mean fidelity of optimal estimation from `N` copies of a real qubit,
/// `1/2 + 2^{-(N+1)} sum_{j<N} sqrt(C(N,j) C(N,j+1))`.
pub fn real_estimation_fidelity(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    let n = n as u64;
    Ok(0.5 + (0..n).map(|j| sqrt_binomial_pair(n, j)).sum::<f64>())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    pub n: usize,
    pub quantum: f64,
    pub classical: f64,
    pub gap: f64,
}

pub fn gap_report(n: usize) -> Result<GapReport> {
    let classical = real_estimation_fidelity(n)?;
    Ok(GapReport {
        n,
        quantum: 1.0,
        classical,
        gap: 1.0 - classical,
    })
}

/// Normalized overlap of the exact NOT output with the ideal complement.
/// Bitwise-equal vectors give exactly 1.
pub fn real_not_fidelity(psi: &RealQubit) -> f64 {
    let out = perfect_real_not(psi);
    let ideal = psi.to_pure().complement();
    let ideal = RealQubit {
        alpha: ideal.alpha().re,
        beta: ideal.beta().re,
    };
    let o = ideal.inner(&out);
    o * o / (ideal.inner(&ideal) * out.inner(&out))
}

/// Whether the output coincides with the general complement amplitudes.
pub fn agrees_with_complement(psi: &RealQubit) -> bool {
    let out = perfect_real_not(psi).to_pure();
    let ideal = psi.to_pure().complement();
    out.alpha() == ideal.alpha() && out.beta() == ideal.beta()
}
