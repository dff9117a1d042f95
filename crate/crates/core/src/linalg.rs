//! Small dense complex linear-algebra helpers shared by the fiber-side
//! engine. Everything is backed by the one-sided Jacobi SVD in
//! [`crate::jacobi`], which stays accurate on exactly rank-deficient
//! inputs; determinism matters more than speed here.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::jacobi::jacobi_svd;

pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 || m.iter().all(|z| z.norm_sqr() == 0.0) {
        return 0.0;
    }
    jacobi_svd(m).sigma.first().copied().unwrap_or(0.0)
}

/// Orthonormal basis of the column space: left singular vectors whose
/// singular value exceeds `rank_tol * σ_max`. Returns an `nrows x rank`
/// matrix (zero columns for a zero input).
pub fn column_space_basis(m: &DMatrix<Complex64>, rank_tol: f64) -> (DMatrix<Complex64>, usize) {
    let n = m.nrows();
    if m.ncols() == 0 || m.iter().all(|z| z.norm_sqr() == 0.0) {
        return (DMatrix::from_element(n, 0, Complex64::new(0.0, 0.0)), 0);
    }
    let svd = jacobi_svd(m);
    let smax = svd.sigma[0];
    let rank = svd.sigma.iter().filter(|&&s| s > rank_tol * smax).count();
    let mut basis = DMatrix::from_element(n, rank, Complex64::new(0.0, 0.0));
    for k in 0..rank {
        basis.set_column(k, &svd.u.column(k));
    }
    (basis, rank)
}

/// Minimum-norm least-squares solution of `m x = b` via the SVD
/// pseudo-inverse with relative cutoff.
pub fn least_squares(
    m: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    rank_tol: f64,
) -> DVector<Complex64> {
    let cols = m.ncols();
    let mut x = DVector::from_element(cols, Complex64::new(0.0, 0.0));
    if cols == 0 || m.iter().all(|z| z.norm_sqr() == 0.0) {
        return x;
    }
    let svd = jacobi_svd(m);
    let smax = svd.sigma[0];
    for (k, &s) in svd.sigma.iter().enumerate() {
        if s <= rank_tol * smax {
            break;
        }
        let coeff: Complex64 = svd
            .u
            .column(k)
            .iter()
            .zip(b.iter())
            .map(|(uk, bk)| uk.conj() * bk)
            .sum();
        let scaled = coeff / s;
        for (i, xv) in x.iter_mut().enumerate() {
            *xv += svd.v[(i, k)] * scaled;
        }
    }
    x
}

/// Squared singular values of a matrix, ascending and clamped at zero:
/// the eigenvalues of its Gram matrix, computed without forming it.
pub fn gram_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut eigs: Vec<f64> = if m.iter().all(|z| z.norm_sqr() == 0.0) {
        vec![0.0; m.ncols()]
    } else {
        let svd = jacobi_svd(m);
        let mut out: Vec<f64> = svd.sigma.iter().map(|s| s * s).collect();
        out.resize(m.ncols(), 0.0);
        out
    };
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    eigs
}

pub fn identity(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_diagonal_element(n, n, Complex64::new(1.0, 0.0))
}

/// Applies the SVD pseudo-inverse of `m` to a vector.
pub fn pinv_apply(
    m: &DMatrix<Complex64>,
    b: &DVector<Complex64>,
    rank_tol: f64,
) -> DVector<Complex64> {
    least_squares(m, b, rank_tol)
}

/// Ratio of the smallest to largest singular value (zero for a singular
/// or empty matrix).
pub fn inverse_condition(m: &DMatrix<Complex64>) -> f64 {
    if m.iter().all(|z| z.norm_sqr() == 0.0) {
        return 0.0;
    }
    let svd = jacobi_svd(m);
    let smax = svd.sigma[0];
    let smin = svd.sigma.last().copied().unwrap_or(0.0);
    if smax == 0.0 {
        0.0
    } else {
        smin / smax
    }
}
