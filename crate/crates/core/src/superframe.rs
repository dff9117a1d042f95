//! Super Hilbert spaces `⊕^N L²(G)` realized as `L²(G x Z_N)` with the
//! diagonal translation action of `Γ x {0}`.
//!
//! A pair of packed families are super dual frames exactly when every
//! component pair is a fiberwise dual frame of the full fiber space and
//! every cross-component pair is fiberwise orthogonal. The verifier
//! evaluates that componentwise criterion and, independently, the dense
//! dual-frame check of the packed families on the product group; the
//! report carries both verdicts.

use std::sync::Arc;

use num_complex::Complex64;
use zakframes_group::{GeneratorFamily, Group, Signal, Subgroup};

use crate::error::{CoreError, Result};
use crate::gramian::{FiberOperatorSet, ZakFamily};
use crate::linalg;
use crate::report::VerificationReport;
use crate::tol::Tolerances;
use crate::zak::{translate, ZakPlan};

/// N generator families on a common pair (G, Γ), packed into one family
/// on `G x Z_N` with subgroup `Γ x {0}`.
#[derive(Debug, Clone)]
pub struct SuperFamily {
    components: Vec<GeneratorFamily>,
    base_sub: Arc<Subgroup>,
    packed_group: Arc<Group>,
    packed_sub: Arc<Subgroup>,
    packed: GeneratorFamily,
}

impl SuperFamily {
    /// Packs component families; all must share the group of `sub` and
    /// have equal generator counts.
    pub fn pack(components: Vec<GeneratorFamily>, sub: &Arc<Subgroup>) -> Result<SuperFamily> {
        let n_copies = components.len();
        if n_copies == 0 {
            return Err(CoreError::EmptyFamily);
        }
        let group = Arc::clone(sub.group());
        let n_gen = components[0].len();
        for comp in &components {
            if comp.group().as_ref() != group.as_ref() {
                return Err(CoreError::ShapeMismatch(
                    "super components live on different groups".into(),
                ));
            }
            if comp.len() != n_gen {
                return Err(CoreError::FamilySizeMismatch(n_gen, comp.len()));
            }
        }
        let packed_group = Arc::new(group.product_with_cyclic(n_copies)?);
        let gamma_elements: Vec<usize> = sub.elements().iter().map(|&g| g * n_copies).collect();
        let packed_sub = Arc::new(Subgroup::from_elements(
            Arc::clone(&packed_group),
            &gamma_elements,
        )?);
        let mut packed = Vec::with_capacity(n_gen);
        for t in 0..n_gen {
            let mut values = vec![Complex64::new(0.0, 0.0); packed_group.order()];
            for (n, comp) in components.iter().enumerate() {
                for x in 0..group.order() {
                    values[x * n_copies + n] = comp.signal(t).value(x);
                }
            }
            packed.push(Signal::new(Arc::clone(&packed_group), values).expect("length"));
        }
        Ok(SuperFamily {
            components,
            base_sub: Arc::clone(sub),
            packed_group,
            packed_sub,
            packed: GeneratorFamily::new(packed)?,
        })
    }

    pub fn n_copies(&self) -> usize {
        self.components.len()
    }

    pub fn n_generators(&self) -> usize {
        self.components[0].len()
    }

    pub fn components(&self) -> &[GeneratorFamily] {
        &self.components
    }

    pub fn base_subgroup(&self) -> &Arc<Subgroup> {
        &self.base_sub
    }

    pub fn packed_group(&self) -> &Arc<Group> {
        &self.packed_group
    }

    pub fn packed_subgroup(&self) -> &Arc<Subgroup> {
        &self.packed_sub
    }

    pub fn packed(&self) -> &GeneratorFamily {
        &self.packed
    }

    /// Component projector `P_n` applied to a packed signal: the slice at
    /// copy `n`, as a signal on the base group.
    pub fn slice(&self, packed: &Signal, n: usize) -> Result<Signal> {
        if packed.group().as_ref() != self.packed_group.as_ref() {
            return Err(CoreError::ShapeMismatch(
                "signal does not live on the packed group".into(),
            ));
        }
        let base = Arc::clone(self.base_sub.group());
        let values = (0..base.order())
            .map(|x| packed.value(x * self.n_copies() + n))
            .collect();
        Ok(Signal::new(base, values).expect("length"))
    }

    /// Embeds a base-group signal into copy `n` of the packed space.
    pub fn inject(&self, f: &Signal, n: usize) -> Result<Signal> {
        if f.group().as_ref() != self.base_sub.group().as_ref() {
            return Err(CoreError::ShapeMismatch(
                "signal does not live on the base group".into(),
            ));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); self.packed_group.order()];
        for x in 0..f.len() {
            values[x * self.n_copies() + n] = f.value(x);
        }
        Ok(Signal::new(Arc::clone(&self.packed_group), values).expect("length"))
    }

    /// The diagonal translation `⊕^N L_γ` on a packed signal, for `γ` a
    /// base-group element.
    pub fn super_translate(&self, packed: &Signal, gamma: usize) -> Result<Signal> {
        if gamma >= self.base_sub.group().order() {
            return Err(CoreError::Group(
                zakframes_group::GroupError::InvalidElement {
                    index: gamma,
                    order: self.base_sub.group().order(),
                },
            ));
        }
        translate(packed, gamma * self.n_copies())
    }
}

/// Componentwise super-dual criterion plus the independent packed-space
/// oracle check. The overall verdict holds only when both agree on
/// success; both residuals are reported.
pub fn verify_super_dual(
    f: &SuperFamily,
    f2: &SuperFamily,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    if f.n_copies() != f2.n_copies() {
        return Err(CoreError::ShapeMismatch(
            "super families have different copy counts".into(),
        ));
    }
    if f.n_generators() != f2.n_generators() {
        return Err(CoreError::FamilySizeMismatch(
            f.n_generators(),
            f2.n_generators(),
        ));
    }
    if f.base_sub.as_ref() != f2.base_sub.as_ref() {
        return Err(CoreError::ShapeMismatch(
            "super families use different subgroups".into(),
        ));
    }
    let n_copies = f.n_copies();
    let plan = ZakPlan::new(Arc::clone(f.base_sub.group()), Arc::clone(&f.base_sub))?;
    let ops_f: Vec<FiberOperatorSet> = f
        .components()
        .iter()
        .map(|c| Ok(FiberOperatorSet::new(&ZakFamily::transform(c, &plan)?)))
        .collect::<Result<_>>()?;
    let ops_f2: Vec<FiberOperatorSet> = f2
        .components()
        .iter()
        .map(|c| Ok(FiberOperatorSet::new(&ZakFamily::transform(c, &plan)?)))
        .collect::<Result<_>>()?;

    let q = plan.cosets().n_cosets();
    let eye = linalg::identity(q);
    let per_fiber: Vec<f64> = (0..plan.n_fibers())
        .map(|alpha| {
            let mut worst = 0.0f64;
            for n1 in 0..n_copies {
                for n2 in 0..n_copies {
                    let mixed = ops_f[n1]
                        .pre_gramian(alpha)
                        .clone()
                        * ops_f2[n2].pre_gramian(alpha).adjoint();
                    let err = if n1 == n2 {
                        linalg::operator_norm(&(&mixed - &eye))
                    } else {
                        linalg::operator_norm(&mixed)
                    };
                    worst = worst.max(err);
                }
            }
            worst
        })
        .collect();

    let packed_check = zakframes_oracle::check_dual_frames_full(
        f.packed(),
        f2.packed(),
        f.packed_subgroup(),
        tol.dual,
    )?;
    let componentwise_holds = per_fiber.iter().all(|&r| r <= tol.dual);
    let report = VerificationReport::from_fibers("super-dual", per_fiber, *tol)
        .with_note("componentwise fiber criterion with packed-space cross-check")
        .with_aux("packed_oracle_residual", packed_check.residual)
        .with_flag("componentwise_verdict", componentwise_holds)
        .with_flag("packed_oracle_verdict", packed_check.holds)
        .with_flag("agreement", componentwise_holds == packed_check.holds)
        .and_residual(packed_check.residual);
    Ok(report)
}
