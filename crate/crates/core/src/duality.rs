//! Verification and construction engines for subspace duality,
//! orthogonality, and biorthogonality of translation-generated systems.
//!
//! All checks are fiberwise. A family `A' = {ψ_t}` is a subspace dual of
//! `A = {φ_t}` exactly when every generator fiber reproduces through the
//! pre-Gramian: `Zφ_{t'}(α) = J_A(α) {[φ_{t'}, ψ_t](α)}_t`; it is subspace
//! orthogonal when the mixed dual-Gramian annihilates the range of
//! `J_A(α)`. Singly generated systems reduce to scalar bracket conditions
//! on the support set.

use nalgebra::DVector;
use num_complex::Complex64;
use zakframes_group::{CosetTable, GeneratorFamily, Signal};

use crate::bracket::{bracket, support_of_bracket, support_set, SupportSet};
use crate::error::{CoreError, Result};
use crate::gramian::{frame_bounds, FiberOperatorSet, ZakFamily};
use crate::linalg;
use crate::report::{Verdict, VerificationReport};
use crate::tol::Tolerances;
use crate::zak::{translate, ZakArray, ZakPlan};

fn fiber_vector(z: &ZakArray, alpha: usize) -> DVector<Complex64> {
    DVector::from_column_slice(z.fiber(alpha))
}

/// Checks that `A'` reproduces `A` fiberwise:
/// `Zφ_{t'}(α) = J_A(α) {[φ_{t'}, ψ_t](α)}_t` for every generator `t'`.
pub fn verify_subspace_dual(
    a: &ZakFamily,
    a2: &ZakFamily,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    if a.len() != a2.len() {
        return Err(CoreError::FamilySizeMismatch(a.len(), a2.len()));
    }
    if !a.same_tables(a2) {
        return Err(CoreError::ShapeMismatch(
            "families transformed over different tables".into(),
        ));
    }
    let ops_a = FiberOperatorSet::new(a);
    let ops_a2 = FiberOperatorSet::new(a2);
    let per_fiber = (0..a.n_fibers())
        .map(|alpha| {
            let j = ops_a.pre_gramian(alpha);
            let j2 = ops_a2.pre_gramian(alpha);
            let mut worst = 0.0f64;
            for tp in 0..a.len() {
                let target = fiber_vector(a.array(tp), alpha);
                // b_t = [phi_{t'}, psi_t](alpha) = <Z phi_{t'}, Z psi_t>.
                let coeffs = j2.adjoint() * &target;
                let reproduced = j * coeffs;
                let err = (&target - reproduced).norm();
                worst = worst.max(err / (1.0 + target.norm()));
            }
            worst
        })
        .collect();
    Ok(VerificationReport::from_fibers(
        "subspace-dual",
        per_fiber,
        *tol,
    ))
}

/// Checks that the mixed dual-Gramian vanishes on the fiber ranges of
/// `A`: `J_A(α) J_{A'}(α)*` restricted to `range J_A(α)` is zero.
pub fn verify_subspace_orthogonal(
    a: &ZakFamily,
    a2: &ZakFamily,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    if a.len() != a2.len() {
        return Err(CoreError::FamilySizeMismatch(a.len(), a2.len()));
    }
    if !a.same_tables(a2) {
        return Err(CoreError::ShapeMismatch(
            "families transformed over different tables".into(),
        ));
    }
    let ops_a = FiberOperatorSet::new(a);
    let ops_a2 = FiberOperatorSet::new(a2);
    let per_fiber = (0..a.n_fibers())
        .map(|alpha| {
            let j = ops_a.pre_gramian(alpha);
            let j2 = ops_a2.pre_gramian(alpha);
            let (basis, rank) = linalg::column_space_basis(j, tol.rank);
            if rank == 0 {
                return 0.0;
            }
            let mixed = j * j2.adjoint();
            let restricted = &mixed * &basis;
            let scale = 1.0 + linalg::operator_norm(j) * linalg::operator_norm(j2);
            linalg::operator_norm(&restricted) / scale
        })
        .collect();
    Ok(VerificationReport::from_fibers(
        "subspace-orthogonal",
        per_fiber,
        *tol,
    ))
}

/// Singly generated duality: `[φ, ψ](α) = 1` on the support of `[φ, φ]`.
pub fn verify_dual_single(
    zphi: &ZakArray,
    zpsi: &ZakArray,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let supp = support_set(zphi, tol.supp)?;
    let cross = bracket(zphi, zpsi)?;
    let per_fiber = (0..cross.len())
        .map(|alpha| {
            if supp.contains(alpha) {
                (cross.at(alpha) - Complex64::new(1.0, 0.0)).norm()
            } else {
                0.0
            }
        })
        .collect();
    Ok(VerificationReport::from_fibers(
        "dual-single",
        per_fiber,
        *tol,
    ))
}

/// Singly generated orthogonality: `[φ, ψ](α) = 0` on the support of
/// `[φ, φ]`. The report also records whether the bracket vanishes on all
/// of `Γ̂`, which the support condition forces.
pub fn verify_orthogonal_single(
    zphi: &ZakArray,
    zpsi: &ZakArray,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let supp = support_set(zphi, tol.supp)?;
    let cross = bracket(zphi, zpsi)?;
    let scale = 1.0 + cross.max_abs();
    let per_fiber: Vec<f64> = (0..cross.len())
        .map(|alpha| {
            if supp.contains(alpha) {
                cross.at(alpha).norm() / scale
            } else {
                0.0
            }
        })
        .collect();
    let global = cross
        .values()
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        / scale;
    let report = VerificationReport::from_fibers("orthogonal-single", per_fiber, *tol);
    let vanishes_globally = global <= tol.dual;
    Ok(report
        .with_aux("global_bracket_max", global)
        .with_flag("bracket_vanishes_globally", vanishes_globally))
}

/// Output of [`construct_dual`].
#[derive(Debug, Clone)]
pub struct DualConstruction {
    pub dual: Signal,
    /// True when the support sets of the two inputs coincide, in which
    /// case the constructed dual is the only one inside `S^Γ(ψ)`.
    pub unique: bool,
}

/// Builds the dual of `φ` inside the span of `ψ`'s translates:
/// `Zψ̃ = Zψ / conj([φ, ψ])` on the support of `[φ, φ]`, zero elsewhere.
/// Requires `|[φ, ψ]|` bounded below on that support.
pub fn construct_dual(
    phi: &Signal,
    psi: &Signal,
    plan: &ZakPlan,
    tol: &Tolerances,
) -> Result<DualConstruction> {
    let zphi = plan.forward(phi)?;
    let zpsi = plan.forward(psi)?;
    let supp_phi = support_set(&zphi, tol.supp)?;
    let supp_psi = support_set(&zpsi, tol.supp)?;
    let cross = bracket(&zphi, &zpsi)?;
    let floor = tol.lower * (1.0 + cross.max_abs());
    for alpha in supp_phi.indices() {
        if cross.at(alpha).norm() < floor {
            return Err(CoreError::NotBoundedBelow {
                alpha,
                magnitude: cross.at(alpha).norm(),
            });
        }
    }
    let mut ztilde = zpsi.clone();
    for alpha in 0..ztilde.n_fibers() {
        if supp_phi.contains(alpha) {
            let m = Complex64::new(1.0, 0.0) / cross.at(alpha).conj();
            for c in 0..ztilde.n_cosets() {
                ztilde.set(alpha, c, zpsi.at(alpha, c) * m);
            }
        } else {
            for c in 0..ztilde.n_cosets() {
                ztilde.set(alpha, c, Complex64::new(0.0, 0.0));
            }
        }
    }
    let dual = plan.inverse(&ztilde)?;
    let check = verify_dual_single(&zphi, &ztilde, tol)?;
    debug_assert!(check.holds(), "constructed dual must verify");
    if !check.holds() {
        return Err(CoreError::NotBoundedBelow {
            alpha: check.offenders.first().map(|o| o.alpha).unwrap_or(0),
            magnitude: check.max_residual,
        });
    }
    Ok(DualConstruction {
        dual,
        unique: supp_phi == supp_psi,
    })
}

/// Builds the biorthogonal generator `ψ` with `Zψ = Zφ / [φ, φ]`;
/// requires `[φ, φ]` bounded below everywhere (a Riesz-type hypothesis).
/// The biorthogonality table is re-verified before returning.
pub fn construct_biorthogonal(phi: &Signal, plan: &ZakPlan, tol: &Tolerances) -> Result<Signal> {
    let zphi = plan.forward(phi)?;
    let diag = bracket(&zphi, &zphi)?;
    let floor = tol.lower * (1.0 + diag.max_abs());
    for alpha in 0..diag.len() {
        if diag.at(alpha).norm() < floor {
            return Err(CoreError::NotBoundedBelow {
                alpha,
                magnitude: diag.at(alpha).norm(),
            });
        }
    }
    let mut zpsi = zphi.clone();
    for alpha in 0..zpsi.n_fibers() {
        let m = Complex64::new(1.0 / diag.at(alpha).re, 0.0);
        for c in 0..zpsi.n_cosets() {
            zpsi.set(alpha, c, zphi.at(alpha, c) * m);
        }
    }
    let psi = plan.inverse(&zpsi)?;
    let table = biortho_residual(phi, &psi, plan)?;
    debug_assert!(table < 1e-10, "biorthogonality residual {table}");
    Ok(psi)
}

/// Max deviation of `⟨L_γ φ, L_{γ'} ψ⟩` from the identity table.
fn biortho_residual(phi: &Signal, psi: &Signal, plan: &ZakPlan) -> Result<f64> {
    let sub = plan.subgroup();
    let mut worst = 0.0f64;
    for (i, &gi) in sub.elements().iter().enumerate() {
        let lphi = translate(phi, gi)?;
        for (j, &gj) in sub.elements().iter().enumerate() {
            let lpsi = translate(psi, gj)?;
            let ip = lphi.inner(&lpsi);
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((ip - Complex64::new(want, 0.0)).norm());
        }
    }
    Ok(worst)
}

/// Biorthogonality check, run through two independent routes: the direct
/// inner-product table against the identity, and the bracket against the
/// constant one. Also reports a linear-independence flag from the Riesz
/// rank test.
pub fn verify_biorthogonal(
    phi: &Signal,
    psi: &Signal,
    plan: &ZakPlan,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let zphi = plan.forward(phi)?;
    let zpsi = plan.forward(psi)?;
    let cross = bracket(&zphi, &zpsi)?;
    let per_fiber: Vec<f64> = cross
        .values()
        .iter()
        .map(|v| (v - Complex64::new(1.0, 0.0)).norm())
        .collect();
    let table_residual = biortho_residual(phi, psi, plan)?;
    let fam = ZakFamily::from_arrays(vec![zphi])?;
    let riesz = frame_bounds(&fam, tol.rank)?.is_riesz;
    let report = VerificationReport::from_fibers("biorthogonal", per_fiber, *tol)
        .with_aux("inner_product_table_residual", table_residual)
        .with_flag("linearly_independent", riesz)
        .and_residual(table_residual);
    Ok(report)
}

/// Per-fiber least-squares coefficients expanding `f` over a family.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// `coefficients[α][t]`, the fiber solve of `J_A(α) m ≈ Zf(α)`.
    pub coefficients: Vec<Vec<Complex64>>,
    pub fiber_residuals: Vec<f64>,
    pub max_residual: f64,
    /// True when every fiber residual is at most the duality tolerance,
    /// i.e. `f` lies in the translation-invariant space of the family.
    pub in_span: bool,
}

/// Least-squares decomposition of `Zf(α)` over the family fibers. For a
/// single generator this reduces to `m(α) = [f, φ](α) / [φ, φ](α)` on
/// the support and zero off it.
pub fn decompose(zf: &ZakArray, fam: &ZakFamily, tol: &Tolerances) -> Result<Decomposition> {
    if !zf.same_shape(fam.array(0)) {
        return Err(CoreError::ShapeMismatch(
            "signal and family transformed over different tables".into(),
        ));
    }
    let ops = FiberOperatorSet::new(fam);
    let mut coefficients = Vec::with_capacity(fam.n_fibers());
    let mut fiber_residuals = Vec::with_capacity(fam.n_fibers());
    for alpha in 0..fam.n_fibers() {
        let j = ops.pre_gramian(alpha);
        let target = fiber_vector(zf, alpha);
        let m = linalg::least_squares(j, &target, tol.rank);
        let err = (j * &m - &target).norm() / (1.0 + target.norm());
        coefficients.push(m.iter().copied().collect());
        fiber_residuals.push(err);
    }
    let max_residual = fiber_residuals.iter().copied().fold(0.0, f64::max);
    Ok(Decomposition {
        coefficients,
        fiber_residuals,
        max_residual,
        in_span: max_residual <= tol.dual,
    })
}

/// Pointwise multiplication of a family by a Γ-periodic function, i.e. one
/// constant on every right coset. Non-constancy is reported with the
/// offending coset representative and element.
pub fn periodic_multiply(
    h: &Signal,
    fam: &GeneratorFamily,
    cosets: &CosetTable,
) -> Result<GeneratorFamily> {
    if h.group().as_ref() != fam.group().as_ref() {
        return Err(CoreError::ShapeMismatch(
            "multiplier lives on a different group".into(),
        ));
    }
    let scale = 1.0 + h.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    for (c, coset) in cosets.cosets().iter().enumerate() {
        let rep = cosets.rep(c);
        let href = h.value(rep);
        for &x in coset {
            if (h.value(x) - href).norm() > 1e-12 * scale {
                return Err(CoreError::NotPeriodic {
                    witness_a: rep,
                    witness_b: x,
                });
            }
        }
    }
    let signals = fam
        .iter()
        .map(|s| {
            let values = (0..s.len()).map(|x| h.value(x) * s.value(x)).collect();
            Signal::new(std::sync::Arc::clone(s.group()), values).expect("same length")
        })
        .collect();
    Ok(GeneratorFamily::new(signals)?)
}

/// Booleans reported by the supplementary orthogonality conditions.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SupplementaryReport {
    /// `[φ,φ](α) [ψ,ψ](α) = 0` for every fiber (bracket supports disjoint).
    pub product_vanishes: bool,
    /// The supports of `α ↦ Zφ(α, ·)` and `α ↦ Zψ(α, ·)` are disjoint.
    pub zak_supports_disjoint: bool,
    /// The Zak support of `φ` equals the support set of `[φ, φ]`.
    pub support_matches_bracket_phi: bool,
    /// Same for `ψ`.
    pub support_matches_bracket_psi: bool,
    /// Verdict of the singly-generated orthogonality check.
    pub orthogonal: bool,
    /// Product vanishing implies orthogonality; false flags a violated
    /// implication.
    pub implication_respected: bool,
}

fn zak_norm_support(z: &ZakArray, eps: f64) -> SupportSet {
    let norms: Vec<Complex64> = (0..z.n_fibers())
        .map(|a| Complex64::new(z.fiber_norm_sqr(a), 0.0))
        .collect();
    let as_bracket =
        crate::bracket::BracketFunction::from_values(norms, crate::bracket::BracketVariant::Zak);
    support_of_bracket(&as_bracket, eps)
}

pub fn supplementary_checks(
    zphi: &ZakArray,
    zpsi: &ZakArray,
    tol: &Tolerances,
) -> Result<SupplementaryReport> {
    let supp_phi = support_set(zphi, tol.supp)?;
    let supp_psi = support_set(zpsi, tol.supp)?;
    let product_vanishes = supp_phi
        .indices()
        .iter()
        .all(|&alpha| !supp_psi.contains(alpha));
    let znorm_phi = zak_norm_support(zphi, tol.supp);
    let znorm_psi = zak_norm_support(zpsi, tol.supp);
    let zak_supports_disjoint = znorm_phi
        .indices()
        .iter()
        .all(|&alpha| !znorm_psi.contains(alpha));
    let orthogonal = verify_orthogonal_single(zphi, zpsi, tol)?.verdict == Verdict::Holds;
    Ok(SupplementaryReport {
        product_vanishes,
        zak_supports_disjoint,
        support_matches_bracket_phi: znorm_phi == supp_phi,
        support_matches_bracket_psi: znorm_psi == supp_psi,
        orthogonal,
        implication_respected: !product_vanishes || orthogonal,
    })
}

/// Canonical subspace dual of a multi-generator family: fiberwise
/// `Zψ_t(α) = J_A(α) G_A(α)^+ e_t`, the minimum-norm solution making the
/// reproducing identity hold. Used both as a construction and by the
/// instance generators.
pub fn canonical_dual_family(fam: &ZakFamily, plan: &ZakPlan, rank_tol: f64) -> Result<GeneratorFamily> {
    let ops = FiberOperatorSet::new(fam);
    let q = fam.n_cosets();
    let mut duals = Vec::with_capacity(fam.len());
    for t in 0..fam.len() {
        let mut rows = vec![Complex64::new(0.0, 0.0); fam.n_fibers() * q];
        for alpha in 0..fam.n_fibers() {
            let j = ops.pre_gramian(alpha);
            // The dual fiber is J (J*J)^+ e_t = (J*)^+ e_t, the
            // minimum-norm least-squares solution of J* y = e_t.
            let e_t = DVector::from_fn(fam.len(), |i, _| {
                Complex64::new(if i == t { 1.0 } else { 0.0 }, 0.0)
            });
            let y = linalg::least_squares(&j.adjoint(), &e_t, rank_tol);
            for c in 0..q {
                rows[alpha * q + c] = y[c];
            }
        }
        let z = ZakArray::from_rows(plan, rows)?;
        duals.push(plan.inverse(&z)?);
    }
    Ok(GeneratorFamily::new(duals)?)
}
