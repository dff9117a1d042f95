//! One-sided Jacobi SVD for dense complex matrices.
//!
//! The factorization works directly on the matrix columns, never forming
//! a normal matrix, so small and exactly-zero singular values come out
//! with full accuracy; zero columns stay exactly zero. Quadratic
//! convergence makes a handful of sweeps enough at the sizes used here.

use nalgebra::DMatrix;
use num_complex::Complex64;

const ORTHO_EPS: f64 = 1e-15;
const MAX_SWEEPS: usize = 128;

/// `a = u * diag(sigma) * v.adjoint()`, with `sigma` descending,
/// `u: n x k`, `v: m x k`, `k = min(n, m)`. Columns of `u` matching a
/// zero singular value are zero vectors.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DMatrix<Complex64>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<Complex64>,
}

pub fn jacobi_svd(a: &DMatrix<Complex64>) -> Svd {
    let (n, m) = a.shape();
    if n < m {
        let t = jacobi_svd(&a.adjoint());
        return Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let mut w = a.clone();
    let mut v = DMatrix::from_diagonal_element(m, m, Complex64::new(1.0, 0.0));

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..m {
            for j in (i + 1)..m {
                let mut alpha = 0.0f64;
                let mut beta = 0.0f64;
                let mut gamma = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)];
                    alpha += wi.norm_sqr();
                    beta += wj.norm_sqr();
                    gamma += wi.conj() * wj;
                }
                let g = gamma.norm();
                if g <= ORTHO_EPS * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // De-phase so the off-diagonal Gram entry is real, then a
                // real rotation zeroing it: t solves t^2 + 2 tau t - 1 = 0.
                let phase_conj = gamma.conj() / g;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let cs = Complex64::new(c, 0.0);
                let ss = Complex64::new(s, 0.0);
                for r in 0..n {
                    let wi = w[(r, i)];
                    let wj = w[(r, j)];
                    w[(r, i)] = cs * wi - phase_conj * ss * wj;
                    w[(r, j)] = ss * wi + phase_conj * cs * wj;
                }
                for r in 0..m {
                    let vi = v[(r, i)];
                    let vj = v[(r, j)];
                    v[(r, i)] = cs * vi - phase_conj * ss * vj;
                    v[(r, j)] = ss * vi + phase_conj * cs * vj;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..m).collect();
    let norms: Vec<f64> = (0..m)
        .map(|j| (0..n).map(|r| w[(r, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).expect("finite norms"));

    let mut u = DMatrix::from_element(n, m, Complex64::new(0.0, 0.0));
    let mut vs = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
    let mut sigma = Vec::with_capacity(m);
    for (k, &j) in order.iter().enumerate() {
        sigma.push(norms[j]);
        if norms[j] > 0.0 {
            let inv = Complex64::new(1.0 / norms[j], 0.0);
            for r in 0..n {
                u[(r, k)] = w[(r, j)] * inv;
            }
        }
        for r in 0..m {
            vs[(r, k)] = v[(r, j)];
        }
    }
    Svd { u, sigma, v: vs }
}
