//! Unitarily invariant sampling of pure qubits and single-qubit unitaries.
//!
//! Monte Carlo loops draw their randomness from [`SampleStream`]: samples
//! are grouped in fixed-size blocks and block `b` reads ChaCha stream `b`
//! of the run seed. Any partition of the blocks across workers reproduces
//! the sequential result as long as per-block partial sums are merged in
//! block order.

use core::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{self, c, CMatrix, Mat2, C64};
use crate::qubit::PureQubit;

/// Samples per stream block.
pub const BLOCK_SIZE: usize = 4096;

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c(re, im)
}

/// Haar-random pure qubit: a normalized pair of standard complex Gaussians.
pub fn haar_pure<R: Rng + ?Sized>(rng: &mut R) -> PureQubit {
    loop {
        let a = gaussian_complex(rng);
        let b = gaussian_complex(rng);
        if let Ok(q) = PureQubit::normalized(a, b) {
            return q;
        }
    }
}

/// Deterministic Haar-random pure qubit for a seed.
pub fn haar_sample_pure(seed: u64) -> PureQubit {
    haar_pure(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Haar-random element of U(2) from a phase-fixed QR of a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let g = CMatrix::from_fn(2, 2, |_, _| gaussian_complex(rng));
    let q = linalg::orthonormalize_columns(&g);
    Mat2::new(q[(0, 0)], q[(0, 1)], q[(1, 0)], q[(1, 1)])
}

/// Haar-random element of SU(2).
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let u = haar_unitary(rng);
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    u / det.sqrt()
}

/// Haar-random isometry with `cols` orthonormal columns in `rows` dimensions.
pub fn haar_isometry<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    let g = CMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng));
    linalg::orthonormalize_columns(&g)
}

/// Counter-based random stream for Monte Carlo runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleStream {
    seed: u64,
    samples: usize,
}

impl SampleStream {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self { seed, samples }
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn block_count(&self) -> usize {
        self.samples.div_ceil(BLOCK_SIZE)
    }

    /// Sample indices covered by block `b`.
    pub fn block_range(&self, b: usize) -> Range<usize> {
        let start = b * BLOCK_SIZE;
        start..(start + BLOCK_SIZE).min(self.samples)
    }

    /// Generator for block `b`.
    pub fn block_rng(&self, b: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(b as u64);
        rng
    }

    /// Runs `f` on every sample in block order.
    pub fn for_each<F: FnMut(&mut ChaCha8Rng)>(&self, mut f: F) {
        for b in 0..self.block_count() {
            let mut rng = self.block_rng(b);
            for _ in self.block_range(b) {
                f(&mut rng);
            }
        }
    }
}
