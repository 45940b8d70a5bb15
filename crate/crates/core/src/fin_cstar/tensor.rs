//! Tensor products: `ℂ^m ⊗ ℂ^n = ℂ^{mn}` and Kronecker products of matrices.
//!
//! Index `(i, j)` of a tensor factor pair is `i * n + j`, so the associator is
//! the identity on indices and only the braiding permutes.

use super::commutative::CommAlg;
use crate::exact::CMat;
use num_complex::Complex64;

pub fn tensor_alg(a: &CommAlg, b: &CommAlg) -> CommAlg {
    let labels: Vec<String> = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("({x},{y})")))
        .collect();
    let n = labels.len();
    CommAlg::new(labels).unwrap_or_else(|_| CommAlg::with_dim(n))
}

pub fn tensor_mat(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Index bijection `(i, j) ↦ (j, i)` from `m·n` to `n·m`.
pub fn braiding_perm(m: usize, n: usize) -> Vec<usize> {
    (0..m * n).map(|k| (k % n) * m + k / n).collect()
}

/// Permutation matrix sending `e_k` to `e_{perm[k]}`.
pub fn perm_matrix(perm: &[usize]) -> CMat {
    let n = perm.len();
    let mut p = CMat::zeros(n, n);
    for (k, &t) in perm.iter().enumerate() {
        p[(t, k)] = Complex64::new(1.0, 0.0);
    }
    p
}

/// `ℂ^m ⊗ ℂ^n -> ℂ^n ⊗ ℂ^m` as a matrix.
pub fn braiding_matrix(m: usize, n: usize) -> CMat {
    perm_matrix(&braiding_perm(m, n))
}

/// `(ℂ^a ⊗ ℂ^b) ⊗ ℂ^c -> ℂ^a ⊗ (ℂ^b ⊗ ℂ^c)`.
pub fn associator_matrix(a: usize, b: usize, c: usize) -> CMat {
    CMat::identity(a * b * c, a * b * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::fro;

    #[test]
    fn algebra_dims_multiply() {
        let t = tensor_alg(&CommAlg::with_dim(2), &CommAlg::with_dim(3));
        assert_eq!(t.dim(), 6);
        assert_eq!(t.labels()[4], "(c1,c1)");
    }

    #[test]
    fn braiding_swaps_kron_factors() {
        let a = CMat::from_fn(2, 2, |i, j| Complex64::new((i * 2 + j) as f64, 1.0));
        let b = CMat::from_fn(3, 3, |i, j| Complex64::new(i as f64 - j as f64, 0.5));
        let s = braiding_matrix(2, 3);
        let lhs = &s * tensor_mat(&a, &b) * s.transpose();
        assert!(fro(&(lhs - tensor_mat(&b, &a))) < 1e-12);
        let back = braiding_matrix(3, 2) * &s;
        assert_eq!(back, CMat::identity(6, 6));
    }
}
