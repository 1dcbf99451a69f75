//! Dense complex linear algebra helpers on top of `nalgebra`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, Dim, Matrix, Matrix2, RawStorage};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;
/// A 2x2 complex matrix acting on a single qubit.
pub type Mat2 = Matrix2<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    // Symmetrize first so tiny anti-Hermitian noise cannot leak in.
    let h = (m + m.adjoint()) * re(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)[0]
}

/// Trace norm of a Hermitian matrix, i.e. the sum of absolute eigenvalues.
pub fn trace_norm(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).iter().map(|l| l.abs()).sum()
}

/// Largest entry modulus.
pub fn max_abs<R: Dim, C: Dim, S: RawStorage<C64, R, C>>(m: &Matrix<C64, R, C, S>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Max-entry distance of `m` from its adjoint.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `|v><w|`
pub fn outer(v: &CVector, w: &CVector) -> CMatrix {
    v * w.adjoint()
}

/// Lifts a fixed 2x2 matrix into the dynamic matrix type.
pub fn mat2_to_dynamic(u: &Mat2) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| u[(i, j)])
}

/// Columns of `m` (rows >= cols) made orthonormal by a phase-fixed QR
/// decomposition. Applied to a complex Ginibre matrix this yields a
/// Haar-distributed isometry.
pub fn orthonormalize_columns(m: &CMatrix) -> CMatrix {
    let qr = m.clone().qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..q.ncols() {
        let d = r[(k, k)];
        let n = d.norm();
        if n > 0.0 {
            let phase = d / re(n);
            for i in 0..q.nrows() {
                q[(i, k)] *= phase;
            }
        }
    }
    q
}

/// Rounds the parts of `z` that are far below `tol` to zero; used only to
/// produce tidy reports.
pub fn chop(z: C64, tol: f64) -> C64 {
    c(
        if z.re.abs() < tol { 0.0 } else { z.re },
        if z.im.abs() < tol { 0.0 } else { z.im },
    )
}
