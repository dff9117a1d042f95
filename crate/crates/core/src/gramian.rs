//! Per-fiber operators of a generator family: pre-Gramians, Gramians,
//! mixed dual-Gramians, range functions, and fiberwise frame bounds.
//!
//! For a family `A = {φ_t}` the pre-Gramian at fiber `α` is the
//! `|Γ\G| x |N|` matrix `J_A(α)` whose column `t` is the Zak fiber of
//! `φ_t`; `G_A(α) = J*J` satisfies `G_A(α)[t'][t] = [φ_t, φ_{t'}](α)`,
//! and the mixed dual-Gramian of two families is `J_A(α) J_{A'}(α)*`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use zakframes_group::GeneratorFamily;

use crate::error::{CoreError, Result};
use crate::linalg;
use crate::zak::{ZakArray, ZakPlan};

/// The Zak transforms of a generator family over shared tables.
#[derive(Debug, Clone)]
pub struct ZakFamily {
    arrays: Vec<ZakArray>,
}

impl ZakFamily {
    /// Transforms every generator of a family under one plan.
    pub fn transform(fam: &GeneratorFamily, plan: &ZakPlan) -> Result<ZakFamily> {
        let arrays = fam
            .iter()
            .map(|s| plan.forward(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(ZakFamily { arrays })
    }

    pub fn from_arrays(arrays: Vec<ZakArray>) -> Result<ZakFamily> {
        let first = arrays.first().ok_or(CoreError::EmptyFamily)?;
        if !arrays.iter().all(|a| a.same_shape(first)) {
            return Err(CoreError::ShapeMismatch(
                "family Zak arrays disagree in shape".into(),
            ));
        }
        Ok(ZakFamily { arrays })
    }

    pub fn len(&self) -> usize {
        self.arrays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrays.is_empty()
    }

    pub fn array(&self, t: usize) -> &ZakArray {
        &self.arrays[t]
    }

    pub fn arrays(&self) -> &[ZakArray] {
        &self.arrays
    }

    pub fn n_fibers(&self) -> usize {
        self.arrays[0].n_fibers()
    }

    pub fn n_cosets(&self) -> usize {
        self.arrays[0].n_cosets()
    }

    pub fn same_tables(&self, other: &ZakFamily) -> bool {
        self.arrays[0].same_shape(&other.arrays[0])
            && self.arrays[0].chars().as_ref() == other.arrays[0].chars().as_ref()
    }
}

/// Pre-Gramian `J_A(α)`: columns are the generators' fibers at `α`.
pub fn pre_gramian(fam: &ZakFamily, alpha: usize) -> DMatrix<Complex64> {
    let q = fam.n_cosets();
    let n = fam.len();
    let mut j = DMatrix::from_element(q, n, Complex64::new(0.0, 0.0));
    for (t, z) in fam.arrays().iter().enumerate() {
        for (c, &v) in z.fiber(alpha).iter().enumerate() {
            j[(c, t)] = v;
        }
    }
    j
}

/// All pre-Gramians of a family, with Gramian and mixed dual-Gramian
/// accessors derived on demand.
#[derive(Debug, Clone)]
pub struct FiberOperatorSet {
    js: Vec<DMatrix<Complex64>>,
}

impl FiberOperatorSet {
    pub fn new(fam: &ZakFamily) -> FiberOperatorSet {
        let js = (0..fam.n_fibers()).map(|a| pre_gramian(fam, a)).collect();
        FiberOperatorSet { js }
    }

    pub fn n_fibers(&self) -> usize {
        self.js.len()
    }

    pub fn n_generators(&self) -> usize {
        self.js[0].ncols()
    }

    pub fn pre_gramian(&self, alpha: usize) -> &DMatrix<Complex64> {
        &self.js[alpha]
    }

    /// `G_A(α) = J_A(α)* J_A(α)`, Hermitian positive semidefinite.
    pub fn gramian(&self, alpha: usize) -> DMatrix<Complex64> {
        let j = &self.js[alpha];
        j.adjoint() * j
    }

    /// `G̃_{A,A'}(α) = J_A(α) J_{A'}(α)*`.
    pub fn mixed_dual_gramian(
        &self,
        other: &FiberOperatorSet,
        alpha: usize,
    ) -> Result<DMatrix<Complex64>> {
        if self.n_generators() != other.n_generators() {
            return Err(CoreError::FamilySizeMismatch(
                self.n_generators(),
                other.n_generators(),
            ));
        }
        Ok(&self.js[alpha] * other.js[alpha].adjoint())
    }
}

/// Convenience wrappers matching the operator names.
pub fn gramian(fam: &ZakFamily, alpha: usize) -> DMatrix<Complex64> {
    let j = pre_gramian(fam, alpha);
    j.adjoint() * &j
}

pub fn mixed_dual_gramian(
    a: &ZakFamily,
    a2: &ZakFamily,
    alpha: usize,
) -> Result<DMatrix<Complex64>> {
    if a.len() != a2.len() {
        return Err(CoreError::FamilySizeMismatch(a.len(), a2.len()));
    }
    Ok(pre_gramian(a, alpha) * pre_gramian(a2, alpha).adjoint())
}

/// Orthonormal basis of `J_A(α)`'s column space and its rank.
pub fn range_function(
    fam: &ZakFamily,
    alpha: usize,
    rank_tol: f64,
) -> (DMatrix<Complex64>, usize) {
    linalg::column_space_basis(&pre_gramian(fam, alpha), rank_tol)
}

/// Fiberwise frame statistics of a translation-generated system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    /// Largest Gramian eigenvalue over all fibers (the Bessel bound).
    pub bessel_bound: f64,
    /// Smallest nonzero Gramian eigenvalue over the nonzero fibers: the
    /// lower frame bound on the span.
    pub lower_bound: f64,
    pub is_bessel: bool,
    pub is_frame_for_span: bool,
    /// Full column rank at every fiber, including fibers where the family
    /// vanishes; equivalently the translates form a Riesz sequence.
    pub is_riesz: bool,
}

/// Eigenvalue sweep over the Gramian fibers. Eigenvalues at or below
/// `rank_tol * bessel_bound` count as zero.
pub fn frame_bounds(fam: &ZakFamily, rank_tol: f64) -> Result<FrameBounds> {
    if fam.is_empty() {
        return Err(CoreError::EmptyFamily);
    }
    let ops = FiberOperatorSet::new(fam);
    // Gramian eigenvalues come from the pre-Gramian singular values, so
    // exactly-vanishing fibers register as exact zeros.
    let spectra: Vec<Vec<f64>> = (0..fam.n_fibers())
        .map(|a| linalg::gram_eigenvalues(ops.pre_gramian(a)))
        .collect();
    let bessel = spectra
        .iter()
        .flat_map(|e| e.iter().copied())
        .fold(0.0, f64::max);
    if bessel == 0.0 {
        return Ok(FrameBounds {
            bessel_bound: 0.0,
            lower_bound: 0.0,
            is_bessel: true,
            is_frame_for_span: false,
            is_riesz: false,
        });
    }
    let cutoff = rank_tol * bessel;
    let lower = spectra
        .iter()
        .flat_map(|e| e.iter().copied())
        .filter(|&l| l > cutoff)
        .fold(f64::INFINITY, f64::min);
    // Riesz needs every eigenvalue at every fiber above the cutoff; a
    // rank-deficient or vanishing fiber breaks l^2 stability.
    let is_riesz = spectra
        .iter()
        .all(|e| e.len() == fam.len() && e.iter().all(|&l| l > cutoff));
    Ok(FrameBounds {
        bessel_bound: bessel,
        lower_bound: lower,
        is_bessel: true,
        is_frame_for_span: true,
        is_riesz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;
    use crate::zak::ZakPlan;
    use std::sync::Arc;
    use zakframes_group::{Group, Signal, Subgroup};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z4_plan() -> ZakPlan {
        let g = Arc::new(Group::product(&[4]).unwrap());
        let s = Arc::new(Subgroup::from_strides(Arc::clone(&g), &[2]).unwrap());
        ZakPlan::new(g, s).unwrap()
    }

    fn family(plan: &ZakPlan, signals: Vec<Signal>) -> ZakFamily {
        let fam = GeneratorFamily::new(signals).unwrap();
        ZakFamily::transform(&fam, plan).unwrap()
    }

    #[test]
    fn pre_gramian_columns() {
        let plan = z4_plan();
        let g = Arc::clone(plan.group());
        let fam = family(&plan, vec![Signal::delta(Arc::clone(&g), 0)]);
        let j = pre_gramian(&fam, 0);
        assert_eq!(j.shape(), (2, 1));
        assert_eq!(j[(0, 0)], c(1.0, 0.0));
        assert_eq!(j[(1, 0)], c(0.0, 0.0));

        let fam2 = family(
            &plan,
            vec![Signal::delta(Arc::clone(&g), 0), Signal::delta(g, 1)],
        );
        for a in 0..2 {
            let j = pre_gramian(&fam2, a);
            assert!((&j - linalg::identity(2)).iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn gramian_matches_brackets() {
        let plan = z4_plan();
        let g = Arc::clone(plan.group());
        let phi = Signal::new(
            Arc::clone(&g),
            vec![c(0.4, 0.3), c(-0.2, 1.0), c(0.9, 0.0), c(0.0, -1.3)],
        )
        .unwrap();
        let psi = Signal::new(
            Arc::clone(&g),
            vec![c(1.1, 0.0), c(0.5, -0.5), c(-0.3, 0.8), c(0.2, 0.2)],
        )
        .unwrap();
        let fam = family(&plan, vec![phi.clone(), psi.clone()]);
        let zs = [plan.forward(&phi).unwrap(), plan.forward(&psi).unwrap()];
        for alpha in 0..2 {
            let gm = gramian(&fam, alpha);
            for tp in 0..2 {
                for t in 0..2 {
                    let want = crate::bracket::bracket(&zs[t], &zs[tp]).unwrap().at(alpha);
                    assert!((gm[(tp, t)] - want).norm() < 1e-12, "G[t'][t] = [phi_t, phi_t']");
                }
            }
        }
    }

    #[test]
    fn mixed_dual_gramian_of_disjoint_deltas() {
        let plan = z4_plan();
        let g = Arc::clone(plan.group());
        let a = family(&plan, vec![Signal::delta(Arc::clone(&g), 0)]);
        let b = family(&plan, vec![Signal::delta(g, 1)]);
        let m = mixed_dual_gramian(&a, &b, 0).unwrap();
        // Outer product (1,0)^T (0,1): single off-diagonal entry.
        assert_eq!(m.shape(), (2, 2));
        assert!((m[(0, 1)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!(m[(0, 0)].norm() < 1e-12 && m[(1, 0)].norm() < 1e-12 && m[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn range_ranks() {
        let plan = z4_plan();
        let g = Arc::clone(plan.group());
        let single = family(&plan, vec![Signal::delta(Arc::clone(&g), 0)]);
        for a in 0..2 {
            let (_, rank) = range_function(&single, a, tol::RANK);
            assert_eq!(rank, 1);
        }
        let pair = family(
            &plan,
            vec![Signal::delta(Arc::clone(&g), 0), Signal::delta(Arc::clone(&g), 1)],
        );
        for a in 0..2 {
            let (_, rank) = range_function(&pair, a, tol::RANK);
            assert_eq!(rank, 2);
        }
        let mut phi = Signal::zeros(g);
        phi.set(0, c(1.0, 0.0));
        phi.set(2, c(1.0, 0.0));
        let degenerate = family(&plan, vec![phi]);
        assert_eq!(range_function(&degenerate, 0, tol::RANK).1, 1);
        assert_eq!(range_function(&degenerate, 1, tol::RANK).1, 0);
    }

    #[test]
    fn frame_bounds_examples() {
        let plan = z4_plan();
        let g = Arc::clone(plan.group());
        let single = family(&plan, vec![Signal::delta(Arc::clone(&g), 0)]);
        let fb = frame_bounds(&single, tol::RANK).unwrap();
        assert!((fb.bessel_bound - 1.0).abs() < 1e-12);
        assert!((fb.lower_bound - 1.0).abs() < 1e-12);
        assert!(fb.is_riesz && fb.is_bessel && fb.is_frame_for_span);

        let mut phi = Signal::zeros(Arc::clone(&g));
        phi.set(0, c(1.0, 0.0));
        phi.set(2, c(1.0, 0.0));
        let fam = family(&plan, vec![phi]);
        let fb = frame_bounds(&fam, tol::RANK).unwrap();
        assert!((fb.bessel_bound - 4.0).abs() < 1e-12);
        assert!((fb.lower_bound - 4.0).abs() < 1e-12);
        assert!(!fb.is_riesz, "a vanishing fiber breaks Riesz stability");

        let zero = family(&plan, vec![Signal::zeros(g)]);
        let fb = frame_bounds(&zero, tol::RANK).unwrap();
        assert_eq!(fb.bessel_bound, 0.0);
        assert!(!fb.is_frame_for_span && !fb.is_riesz && fb.is_bessel);
    }
}
