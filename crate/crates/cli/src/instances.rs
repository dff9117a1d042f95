//! Seeded instance generation for the differential-test harness.
//!
//! Each constructor returns families with a known ground-truth verdict:
//! canonical duals built from the dense frame operator, fiberwise
//! orthogonal complements, equal-span swapped pairs, Gabor duals through
//! the commuting frame operator, and packed super duals. Perturbation
//! helpers push exact instances to a prescribed residual scale for
//! near-threshold verdict tests.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zakframes_core::{
    gabor_expand, range_function, FiberPlan, SuperFamily, ZakArray, ZakFamily, ZakPlan,
};
use zakframes_group::{symmetric_group_s3, GeneratorFamily, Group, Signal, Subgroup};

use crate::error::Result;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_signal(rng: &mut ChaCha8Rng, group: &Arc<Group>) -> Signal {
    let values = (0..group.order())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Signal::new(Arc::clone(group), values).expect("length")
}

pub fn random_family(rng: &mut ChaCha8Rng, group: &Arc<Group>, len: usize) -> GeneratorFamily {
    GeneratorFamily::new((0..len).map(|_| random_signal(rng, group)).collect()).expect("nonempty")
}

pub fn random_product_group(rng: &mut ChaCha8Rng, max_order: usize) -> Arc<Group> {
    loop {
        let d = rng.gen_range(1..=3);
        let orders: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=8)).collect();
        if orders.iter().product::<usize>() <= max_order {
            return Arc::new(Group::product(&orders).expect("valid orders"));
        }
    }
}

pub fn random_stride_subgroup(rng: &mut ChaCha8Rng, group: &Arc<Group>) -> Arc<Subgroup> {
    let orders = group.factor_orders().expect("product group").to_vec();
    let strides: Vec<usize> = orders
        .iter()
        .map(|&n| {
            let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
            divisors[rng.gen_range(0..divisors.len())]
        })
        .collect();
    Arc::new(Subgroup::from_strides(Arc::clone(group), &strides).expect("valid strides"))
}

/// Random (group, subgroup) with bounded sizes; a fifth of the instances
/// are non-abelian (S3-based) when allowed.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    max_group: usize,
    max_subgroup: usize,
    allow_nonabelian: bool,
) -> (Arc<Group>, Arc<Subgroup>) {
    loop {
        if allow_nonabelian && rng.gen_ratio(1, 5) {
            let g = Arc::new(symmetric_group_s3());
            let gen = if rng.gen_bool(0.5) { 1 } else { 3 };
            let s = Arc::new(Subgroup::from_generators(Arc::clone(&g), &[gen]).expect("abelian"));
            if s.order() <= max_subgroup {
                return (g, s);
            }
            continue;
        }
        let g = random_product_group(rng, max_group);
        let s = random_stride_subgroup(rng, &g);
        if s.order() <= max_subgroup {
            return (g, s);
        }
    }
}

/// Applies the SVD pseudo-inverse of `m` to a vector.
fn pinv_apply(m: &DMatrix<Complex64>, v: &DVector<Complex64>, rel_tol: f64) -> DVector<Complex64> {
    zakframes_core::linalg::pinv_apply(m, v, rel_tol)
}

fn apply_matrix(m: &DMatrix<Complex64>, f: &Signal) -> Signal {
    let v = m * DVector::from_column_slice(f.values());
    Signal::new(Arc::clone(f.group()), v.iter().copied().collect()).expect("length")
}

/// A random family together with its canonical subspace dual: the dense
/// frame operator commutes with the translations, so `S^+ φ_t` generates
/// a dual of the translated system.
pub fn dual_pair(
    rng: &mut ChaCha8Rng,
    group: &Arc<Group>,
    sub: &Arc<Subgroup>,
    n_gen: usize,
) -> Result<(GeneratorFamily, GeneratorFamily)> {
    let fam = random_family(rng, group, n_gen);
    let s_op = zakframes_oracle::mixed_operator(&fam, &fam, sub)?;
    let duals: Vec<Signal> = fam
        .iter()
        .map(|phi| {
            let v = pinv_apply(&s_op, &DVector::from_column_slice(phi.values()), 1e-10);
            Signal::new(Arc::clone(group), v.iter().copied().collect()).expect("length")
        })
        .collect();
    Ok((fam, GeneratorFamily::new(duals)?))
}

/// A random family and a second family built inside the fiberwise
/// orthogonal complement of the first, so the pair is subspace
/// orthogonal by construction.
pub fn orthogonal_pair(
    rng: &mut ChaCha8Rng,
    group: &Arc<Group>,
    sub: &Arc<Subgroup>,
    n_gen: usize,
) -> Result<(GeneratorFamily, GeneratorFamily)> {
    let plan = ZakPlan::new(Arc::clone(group), Arc::clone(sub))?;
    let fam = random_family(rng, group, n_gen);
    let zfam = ZakFamily::transform(&fam, &plan)?;
    let others: Vec<Signal> = (0..n_gen)
        .map(|_| {
            let raw = random_signal(rng, group);
            let zraw = plan.forward(&raw)?;
            let q = zraw.n_cosets();
            let mut rows = vec![Complex64::new(0.0, 0.0); zraw.n_fibers() * q];
            for alpha in 0..zraw.n_fibers() {
                let (basis, rank) = range_function(&zfam, alpha, 1e-10);
                let v = DVector::from_column_slice(zraw.fiber(alpha));
                let mut out = v.clone();
                if rank > 0 {
                    let coeffs = basis.adjoint() * &v;
                    out -= basis * coeffs;
                }
                for c in 0..q {
                    rows[alpha * q + c] = out[c];
                }
            }
            let z = ZakArray::from_rows(&plan, rows)?;
            plan.inverse(&z)
        })
        .collect::<zakframes_core::Result<_>>()?;
    Ok((fam, GeneratorFamily::new(others)?))
}

/// Two-generator families with swapped fiber supports: equal spans at
/// every fiber, orthogonal when `swap` is true, non-orthogonal otherwise.
pub fn equal_span_pair(
    rng: &mut ChaCha8Rng,
    group: &Arc<Group>,
    sub: &Arc<Subgroup>,
    swap: bool,
) -> Result<(GeneratorFamily, GeneratorFamily)> {
    let plan = ZakPlan::new(Arc::clone(group), Arc::clone(sub))?;
    let m = plan.n_fibers();
    let q = plan.cosets().n_cosets();
    // Random nontrivial fiber bipartition.
    let mut in_first = vec![false; m];
    loop {
        for flag in in_first.iter_mut() {
            *flag = rng.gen_bool(0.5);
        }
        let ones = in_first.iter().filter(|&&b| b).count();
        if m == 1 || (ones > 0 && ones < m) {
            break;
        }
    }
    let mut random_rows = |mask: &dyn Fn(usize) -> bool| -> Vec<Complex64> {
        let mut rows = vec![Complex64::new(0.0, 0.0); m * q];
        for alpha in 0..m {
            if mask(alpha) {
                for c in 0..q {
                    rows[alpha * q + c] =
                        Complex64::new(rng.gen_range(0.2..1.0), rng.gen_range(-1.0..1.0));
                }
            }
        }
        rows
    };
    let rows_phi1 = random_rows(&|a| in_first[a]);
    let rows_phi2 = random_rows(&|a| !in_first[a]);
    // The second family reuses the same fiber data times a nonvanishing
    // multiplier, so fiber ranges coincide exactly.
    let multiply = |rows: &[Complex64], rng: &mut ChaCha8Rng| -> Vec<Complex64> {
        let mut out = rows.to_vec();
        for alpha in 0..m {
            let factor = Complex64::new(rng.gen_range(0.3..1.2), rng.gen_range(-0.5..0.5));
            for c in 0..q {
                out[alpha * q + c] *= factor;
            }
        }
        out
    };
    let (rows_z1, rows_z2) = if swap {
        (multiply(&rows_phi2, rng), multiply(&rows_phi1, rng))
    } else {
        (multiply(&rows_phi1, rng), multiply(&rows_phi2, rng))
    };
    let to_signal = |rows: Vec<Complex64>| -> zakframes_core::Result<Signal> {
        plan.inverse(&ZakArray::from_rows(&plan, rows)?)
    };
    let fam = GeneratorFamily::new(vec![to_signal(rows_phi1)?, to_signal(rows_phi2)?])?;
    let fam2 = GeneratorFamily::new(vec![to_signal(rows_z1)?, to_signal(rows_z2)?])?;
    Ok((fam, fam2))
}

/// A base family and its canonical Gabor dual: the Gabor frame operator
/// commutes with both the translations and the annihilator modulations,
/// so applying its pseudo-inverse to each base generator produces a base
/// family whose expansion is dual to the expanded system.
pub fn gabor_dual_pair(
    rng: &mut ChaCha8Rng,
    group: &Arc<Group>,
    sub: &Arc<Subgroup>,
    n_gen: usize,
) -> Result<(GeneratorFamily, GeneratorFamily)> {
    let fp = FiberPlan::new(Arc::clone(group), Arc::clone(sub))?;
    let fam = random_family(rng, group, n_gen);
    let expanded = gabor_expand(&fam, &fp)?;
    let s_op = zakframes_oracle::mixed_operator(expanded.expanded(), expanded.expanded(), sub)?;
    let duals: Vec<Signal> = fam
        .iter()
        .map(|phi| {
            let v = pinv_apply(&s_op, &DVector::from_column_slice(phi.values()), 1e-10);
            Signal::new(Arc::clone(group), v.iter().copied().collect()).expect("length")
        })
        .collect();
    Ok((fam, GeneratorFamily::new(duals)?))
}

/// Packed super dual frames: random components sized to frame the whole
/// packed space, with the partner obtained from the inverse packed frame
/// operator. Retries until the frame operator is well conditioned.
pub fn super_dual_pair(
    rng: &mut ChaCha8Rng,
    group: &Arc<Group>,
    sub: &Arc<Subgroup>,
    n_copies: usize,
) -> Result<(SuperFamily, SuperFamily)> {
    let plan = ZakPlan::new(Arc::clone(group), Arc::clone(sub))?;
    let q = plan.cosets().n_cosets();
    let n_gen = q * n_copies;
    loop {
        let components: Vec<GeneratorFamily> = (0..n_copies)
            .map(|_| random_family(rng, group, n_gen))
            .collect();
        let sf = SuperFamily::pack(components, sub)?;
        let s_op =
            zakframes_oracle::mixed_operator(sf.packed(), sf.packed(), sf.packed_subgroup())?;
        if zakframes_core::linalg::inverse_condition(&s_op) < 1e-6 {
            continue; // nearly singular packed frame; redraw
        }
        let dual_packed: Vec<Signal> = sf
            .packed()
            .iter()
            .map(|phi| {
                let v = pinv_apply(&s_op, &DVector::from_column_slice(phi.values()), 1e-12);
                Signal::new(Arc::clone(sf.packed_group()), v.iter().copied().collect())
                    .expect("length")
            })
            .collect();
        let mut dual_components: Vec<Vec<Signal>> = vec![Vec::new(); n_copies];
        for packed in &dual_packed {
            for (n, slot) in dual_components.iter_mut().enumerate() {
                slot.push(sf.slice(packed, n)?);
            }
        }
        let dual_sf = SuperFamily::pack(
            dual_components
                .into_iter()
                .map(GeneratorFamily::new)
                .collect::<zakframes_group::Result<_>>()?,
            sub,
        )?;
        return Ok((sf, dual_sf));
    }
}

/// Adds `eps`-scaled random noise to every generator.
pub fn perturb_family(
    rng: &mut ChaCha8Rng,
    fam: &GeneratorFamily,
    eps: f64,
) -> GeneratorFamily {
    let signals = fam
        .iter()
        .map(|s| {
            let noise = random_signal(rng, s.group());
            let unit = noise.scaled(Complex64::new(1.0 / noise.norm().max(1e-9), 0.0));
            s.add(&unit.scaled(Complex64::new(eps, 0.0)))
        })
        .collect();
    GeneratorFamily::new(signals).expect("nonempty")
}

/// Left-translate helper mirroring the library convention, used when
/// assembling mixed operators for generated instances.
pub fn apply_operator(m: &DMatrix<Complex64>, f: &Signal) -> Signal {
    apply_matrix(m, f)
}
