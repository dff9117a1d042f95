//! Dense signal-domain reference implementation for translation-generated
//! systems: synthesis/analysis matrices, mixed operators, span projectors,
//! reproducing and orthogonality checks, frame bounds, and biorthogonality
//! tables.
//!
//! This crate is the ground truth that the fiber-domain engine is tested
//! against. It deliberately depends only on `zakframes-group` and dense
//! linear algebra; it never touches Zak or Gramian code. Matrices are
//! materialized in full and all operator norms come from full SVDs, so it
//! is correct at desk scale rather than fast.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;
use zakframes_group::{GeneratorFamily, GroupError, Signal, Subgroup};

mod svd;

use svd::jacobi_svd;

/// Cap on `|G| * |Γ| * |N|`; the oracle exists for correctness, not scale.
pub const MAX_DENSE_ENTRIES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Group(#[from] GroupError),

    #[error("families have sizes {0} and {1}, expected equal")]
    FamilySizeMismatch(usize, usize),

    #[error("dense problem with {entries} entries exceeds cap {cap}")]
    TooLarge { entries: usize, cap: usize },

    #[error("family and subgroup live on different groups")]
    GroupMismatch,
}

pub type Result<T> = std::result::Result<T, OracleError>;

/// Verdict of a single oracle check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheck {
    pub holds: bool,
    pub residual: f64,
}

/// Dense synthesis matrix of the translated family `{L_γ φ_t}`.
///
/// Column `t * |Γ| + i` holds the left translate of generator `t` by the
/// `i`-th subgroup element (t-major, γ-minor order). The analysis operator
/// is the conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisMatrix {
    matrix: DMatrix<Complex64>,
    n_generators: usize,
    subgroup_order: usize,
}

impl SynthesisMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Applies the analysis operator: `⟨f, L_γ φ_t⟩` in column order.
    pub fn analysis(&self, f: &Signal) -> DVector<Complex64> {
        let v = DVector::from_column_slice(f.values());
        self.matrix.adjoint() * v
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }
}

fn check_same_group(fam: &GeneratorFamily, sub: &Subgroup) -> Result<()> {
    if fam.group().as_ref() != sub.group().as_ref() {
        return Err(OracleError::GroupMismatch);
    }
    Ok(())
}

/// Left translate `(L_η f)(x) = f(η^{-1} x)`, computed from group
/// arithmetic alone.
fn left_translate(f: &Signal, eta: usize) -> Vec<Complex64> {
    let g = f.group();
    let eta_inv = g.inv(eta);
    (0..g.order()).map(|x| f.value(g.mul(eta_inv, x))).collect()
}

pub fn synthesis_matrix(fam: &GeneratorFamily, sub: &Subgroup) -> Result<SynthesisMatrix> {
    check_same_group(fam, sub)?;
    let n = fam.group().order();
    let cols = fam.len() * sub.order();
    let entries = n * cols;
    if entries > MAX_DENSE_ENTRIES {
        return Err(OracleError::TooLarge {
            entries,
            cap: MAX_DENSE_ENTRIES,
        });
    }
    let mut m = DMatrix::from_element(n, cols, Complex64::new(0.0, 0.0));
    for (t, phi) in fam.iter().enumerate() {
        for (i, &gamma) in sub.elements().iter().enumerate() {
            let col = left_translate(phi, gamma);
            for (r, v) in col.into_iter().enumerate() {
                m[(r, t * sub.order() + i)] = v;
            }
        }
    }
    Ok(SynthesisMatrix {
        matrix: m,
        n_generators: fam.len(),
        subgroup_order: sub.order(),
    })
}

/// Largest singular value; zero for an all-zero matrix.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 || m.iter().all(|z| z.norm_sqr() == 0.0) {
        return 0.0;
    }
    jacobi_svd(m).sigma.first().copied().unwrap_or(0.0)
}

/// The mixed operator `f ↦ Σ_{t,γ} ⟨f, L_γ ψ_t⟩ L_γ φ_t` as a dense
/// `|G| x |G|` matrix, where `a` supplies the `φ` and `a2` the `ψ`.
pub fn mixed_operator(
    a: &GeneratorFamily,
    a2: &GeneratorFamily,
    sub: &Subgroup,
) -> Result<DMatrix<Complex64>> {
    if a.len() != a2.len() {
        return Err(OracleError::FamilySizeMismatch(a.len(), a2.len()));
    }
    let syn = synthesis_matrix(a, sub)?;
    let syn2 = synthesis_matrix(a2, sub)?;
    Ok(syn.matrix() * syn2.matrix().adjoint())
}

/// Orthogonal projector onto the span of the translated family, via SVD
/// of the synthesis matrix with a relative rank cutoff.
pub fn span_projector(
    a: &GeneratorFamily,
    sub: &Subgroup,
    rank_tol: f64,
) -> Result<DMatrix<Complex64>> {
    let syn = synthesis_matrix(a, sub)?;
    let n = syn.matrix().nrows();
    let mut p = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    if syn.matrix().iter().all(|z| z.norm_sqr() == 0.0) {
        return Ok(p);
    }
    let svd = jacobi_svd(syn.matrix());
    let smax = svd.sigma[0];
    for (k, &s) in svd.sigma.iter().enumerate() {
        if s > rank_tol * smax {
            let uk = svd.u.column(k);
            for r in 0..n {
                for c in 0..n {
                    p[(r, c)] += uk[r] * uk[c].conj();
                }
            }
        }
    }
    Ok(p)
}

/// Rank of the span of the translated family.
pub fn span_rank(a: &GeneratorFamily, sub: &Subgroup, rank_tol: f64) -> Result<usize> {
    let syn = synthesis_matrix(a, sub)?;
    if syn.matrix().iter().all(|z| z.norm_sqr() == 0.0) {
        return Ok(0);
    }
    let svd = jacobi_svd(syn.matrix());
    let smax = svd.sigma[0];
    Ok(svd.sigma.iter().filter(|&&s| s > rank_tol * smax).count())
}

/// Reproducing-formula check: `Σ ⟨f, L_γ ψ_t⟩ L_γ φ_t = f` for every `f`
/// in the span of `{L_γ φ_t}`. The residual is the operator norm of
/// `(S - I) P_span`.
pub fn check_reproducing(
    a: &GeneratorFamily,
    a2: &GeneratorFamily,
    sub: &Subgroup,
    tol: f64,
    rank_tol: f64,
) -> Result<OracleCheck> {
    let s = mixed_operator(a, a2, sub)?;
    let p = span_projector(a, sub, rank_tol)?;
    let n = s.nrows();
    let eye = DMatrix::from_diagonal_element(n, n, Complex64::new(1.0, 0.0));
    let residual = operator_norm(&((&s - &eye) * &p));
    Ok(OracleCheck {
        holds: residual <= tol,
        residual,
    })
}

/// Orthogonality check: the mixed operator vanishes on the span of
/// `{L_γ φ_t}`. The residual is `‖S P_span‖ / (1 + ‖Syn(A)‖ ‖Syn(A')‖)`.
pub fn check_orthogonal(
    a: &GeneratorFamily,
    a2: &GeneratorFamily,
    sub: &Subgroup,
    tol: f64,
    rank_tol: f64,
) -> Result<OracleCheck> {
    let s = mixed_operator(a, a2, sub)?;
    let p = span_projector(a, sub, rank_tol)?;
    let raw = operator_norm(&(&s * &p));
    let na = operator_norm(synthesis_matrix(a, sub)?.matrix());
    let nb = operator_norm(synthesis_matrix(a2, sub)?.matrix());
    let residual = raw / (1.0 + na * nb);
    Ok(OracleCheck {
        holds: residual <= tol,
        residual,
    })
}

/// Dual-frame check on the whole space: `S = I` on `L²(G)`, no projector.
/// Used for super duals, where both packed systems must frame everything.
pub fn check_dual_frames_full(
    a: &GeneratorFamily,
    a2: &GeneratorFamily,
    sub: &Subgroup,
    tol: f64,
) -> Result<OracleCheck> {
    let s = mixed_operator(a, a2, sub)?;
    let n = s.nrows();
    let eye = DMatrix::from_diagonal_element(n, n, Complex64::new(1.0, 0.0));
    let residual = operator_norm(&(&s - &eye));
    Ok(OracleCheck {
        holds: residual <= tol,
        residual,
    })
}

/// Extreme eigenvalues of the frame operator `Syn Syn*` restricted to the
/// span: returns `(A, B)` with `A` the smallest eigenvalue above the rank
/// cutoff and `B` the largest. An all-zero family yields `(0, 0)`.
pub fn frame_bounds_oracle(
    a: &GeneratorFamily,
    sub: &Subgroup,
    rank_tol: f64,
) -> Result<(f64, f64)> {
    let syn = synthesis_matrix(a, sub)?;
    if syn.matrix().iter().all(|z| z.norm_sqr() == 0.0) {
        return Ok((0.0, 0.0));
    }
    // Frame-operator eigenvalues are the squared singular values of the
    // synthesis matrix.
    let eigs: Vec<f64> = jacobi_svd(syn.matrix())
        .sigma
        .iter()
        .map(|s| s * s)
        .collect();
    let b = eigs[0];
    let a_low = eigs
        .iter()
        .copied()
        .filter(|&l| l > rank_tol * b)
        .fold(f64::INFINITY, f64::min);
    Ok((if a_low.is_finite() { a_low } else { 0.0 }, b))
}

/// Full table `⟨L_γ φ, L_{γ'} ψ⟩` over `Γ x Γ`.
pub fn biortho_table(phi: &Signal, psi: &Signal, sub: &Subgroup) -> Result<DMatrix<Complex64>> {
    if phi.group().as_ref() != sub.group().as_ref() || !phi.same_group(psi) {
        return Err(OracleError::GroupMismatch);
    }
    let m = sub.order();
    let mut out = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
    let translates_phi: Vec<Vec<Complex64>> = sub
        .elements()
        .iter()
        .map(|&g| left_translate(phi, g))
        .collect();
    let translates_psi: Vec<Vec<Complex64>> = sub
        .elements()
        .iter()
        .map(|&g| left_translate(psi, g))
        .collect();
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = translates_phi[i]
                .iter()
                .zip(&translates_psi[j])
                .map(|(x, y)| x * y.conj())
                .sum();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use zakframes_group::Group;

    fn z4_setup() -> (Arc<Group>, Arc<Subgroup>) {
        let g = Arc::new(Group::product(&[4]).unwrap());
        let s = Arc::new(Subgroup::from_strides(Arc::clone(&g), &[2]).unwrap());
        (g, s)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn synthesis_matrix_of_delta() {
        let (g, s) = z4_setup();
        let fam = GeneratorFamily::new(vec![Signal::delta(Arc::clone(&g), 0)]).unwrap();
        let syn = synthesis_matrix(&fam, &s).unwrap();
        // Columns are delta_0 and delta_2.
        let m = syn.matrix();
        assert_eq!(m.shape(), (4, 2));
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(2, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(0.0, 0.0));

        let an = syn.analysis(&Signal::delta(g, 0));
        assert_eq!(an[0], c(1.0, 0.0));
        assert_eq!(an[1], c(0.0, 0.0));
    }

    #[test]
    fn mixed_operator_projects_for_orthonormal_translates() {
        let (g, s) = z4_setup();
        let fam = GeneratorFamily::new(vec![Signal::delta(Arc::clone(&g), 0)]).unwrap();
        let m = mixed_operator(&fam, &fam, &s).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                let want = if r == col && r % 2 == 0 { 1.0 } else { 0.0 };
                assert!((m[(r, col)] - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn mixed_operator_commutes_with_translations() {
        let (g, s) = z4_setup();
        let phi = Signal::new(
            Arc::clone(&g),
            vec![c(0.3, 0.1), c(-1.0, 0.4), c(0.0, 0.2), c(2.0, -0.7)],
        )
        .unwrap();
        let psi = Signal::new(
            Arc::clone(&g),
            vec![c(1.0, -0.5), c(0.2, 0.0), c(-0.4, 1.1), c(0.0, 0.9)],
        )
        .unwrap();
        let a = GeneratorFamily::new(vec![phi]).unwrap();
        let a2 = GeneratorFamily::new(vec![psi]).unwrap();
        let m = mixed_operator(&a, &a2, &s).unwrap();
        for &gamma in s.elements() {
            // L_gamma as a permutation matrix.
            let mut l = DMatrix::from_element(4, 4, c(0.0, 0.0));
            for x in 0..4 {
                l[(x, g.mul(g.inv(gamma), x))] = c(1.0, 0.0);
            }
            let comm = &l * &m - &m * &l;
            assert!(operator_norm(&comm) < 1e-12);
        }
    }

    #[test]
    fn span_projector_for_delta() {
        let (g, s) = z4_setup();
        let fam = GeneratorFamily::new(vec![Signal::delta(g, 0)]).unwrap();
        let p = span_projector(&fam, &s, 1e-10).unwrap();
        for r in 0..4 {
            let want = if r % 2 == 0 { 1.0 } else { 0.0 };
            assert!((p[(r, r)] - c(want, 0.0)).norm() < 1e-12);
        }
        // Projector laws.
        let idem = &p * &p - &p;
        assert!(operator_norm(&idem) < 1e-12);
        let herm = p.adjoint() - &p;
        assert!(operator_norm(&herm) < 1e-12);
    }

    #[test]
    fn reproducing_examples() {
        let (g, s) = z4_setup();
        let d0 = Signal::delta(Arc::clone(&g), 0);
        let fam = GeneratorFamily::new(vec![d0.clone()]).unwrap();
        let ok = check_reproducing(&fam, &fam, &s, 1e-8, 1e-10).unwrap();
        assert!(ok.holds);

        let mut phi = Signal::zeros(Arc::clone(&g));
        phi.set(0, c(1.0, 0.0));
        phi.set(2, c(1.0, 0.0));
        let a = GeneratorFamily::new(vec![phi]).unwrap();
        let half = GeneratorFamily::new(vec![d0.scaled(c(0.5, 0.0))]).unwrap();
        let ok = check_reproducing(&a, &half, &s, 1e-8, 1e-10).unwrap();
        assert!(ok.holds, "residual {}", ok.residual);

        let bad = GeneratorFamily::new(vec![d0]).unwrap();
        let no = check_reproducing(&a, &bad, &s, 1e-8, 1e-10).unwrap();
        assert!(!no.holds);
        assert!((no.residual - 1.0).abs() < 1e-9, "doubles on the span");
    }

    #[test]
    fn orthogonality_examples() {
        let (g, s) = z4_setup();
        let a = GeneratorFamily::new(vec![Signal::delta(Arc::clone(&g), 0)]).unwrap();
        let b = GeneratorFamily::new(vec![Signal::delta(g, 1)]).unwrap();
        assert!(check_orthogonal(&a, &b, &s, 1e-8, 1e-10).unwrap().holds);
        assert!(!check_orthogonal(&a, &a, &s, 1e-8, 1e-10).unwrap().holds);
    }

    #[test]
    fn frame_bounds_examples() {
        let (g, s) = z4_setup();
        let a = GeneratorFamily::new(vec![Signal::delta(Arc::clone(&g), 0)]).unwrap();
        let (lo, hi) = frame_bounds_oracle(&a, &s, 1e-10).unwrap();
        assert!((lo - 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);

        let mut phi = Signal::zeros(Arc::clone(&g));
        phi.set(0, c(1.0, 0.0));
        phi.set(2, c(1.0, 0.0));
        let a = GeneratorFamily::new(vec![phi]).unwrap();
        let (lo, hi) = frame_bounds_oracle(&a, &s, 1e-10).unwrap();
        assert!((lo - 4.0).abs() < 1e-12 && (hi - 4.0).abs() < 1e-12);
    }

    #[test]
    fn biortho_table_of_delta_is_identity() {
        let (g, s) = z4_setup();
        let d0 = Signal::delta(g, 0);
        let t = biortho_table(&d0, &d0, &s).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((t[(i, j)] - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let g = Arc::new(Group::product(&[64, 64]).unwrap());
        let s = Arc::new(Subgroup::from_strides(Arc::clone(&g), &[1, 1]).unwrap());
        let fam = GeneratorFamily::new(vec![Signal::delta(g, 0)]).unwrap();
        assert!(matches!(
            synthesis_matrix(&fam, &s),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
