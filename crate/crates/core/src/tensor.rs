//! Brute-force operations on full `2^n` register vectors.
//!
//! Qubit 1 is the most significant bit of a basis index. These routines are
//! the ground truth the structured Dicke-basis code is checked against.

use alloc::vec::Vec;

use crate::linalg::{re, CMatrix, CVector, Mat2, ONE};

/// Applies `u` to qubit `pos` (zero-based) of an `n`-qubit vector in place.
pub fn apply_single(v: &mut CVector, n: usize, pos: usize, u: &Mat2) {
    let bit = 1usize << (n - 1 - pos);
    for i in 0..v.len() {
        if i & bit == 0 {
            let j = i | bit;
            let (a, b) = (v[i], v[j]);
            v[i] = u[(0, 0)] * a + u[(0, 1)] * b;
            v[j] = u[(1, 0)] * a + u[(1, 1)] * b;
        }
    }
}

/// Applies `u` to every qubit.
pub fn apply_to_all(v: &mut CVector, n: usize, u: &Mat2) {
    for p in 0..n {
        apply_single(v, n, p, u);
    }
}

/// `u^{(x)r}` as a dense matrix.
pub fn kron_power(u: &Mat2, r: usize) -> CMatrix {
    let u = crate::linalg::mat2_to_dynamic(u);
    let mut out = CMatrix::from_element(1, 1, ONE);
    for _ in 0..r {
        out = out.kronecker(&u);
    }
    out
}

/// Reorders qubits: qubit `p` of the input becomes qubit `perm[p]`.
pub fn permute_qubits(v: &CVector, n: usize, perm: &[usize]) -> CVector {
    let mut out = CVector::zeros(v.len());
    for i in 0..v.len() {
        let mut j = 0;
        for (p, &q) in perm.iter().enumerate() {
            if (i >> (n - 1 - p)) & 1 == 1 {
                j |= 1 << (n - 1 - q);
            }
        }
        out[j] = v[i];
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Average of `v` over all qubit permutations (unnormalized projection onto
/// the symmetric subspace).
pub fn symmetrize(v: &CVector, n: usize) -> CVector {
    let perms = permutations(n);
    let mut acc = CVector::zeros(v.len());
    for p in &perms {
        acc += permute_qubits(v, n, p);
    }
    acc * re(1.0 / perms.len() as f64)
}

/// Computational basis vector `|bits>` of an `n`-qubit register.
pub fn basis_vector(n: usize, bits: usize) -> CVector {
    let mut v = CVector::zeros(1 << n);
    v[bits] = ONE;
    v
}
