//! Seeded random instances shared by the integration tests.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zakframes_group::{symmetric_group_s3, GeneratorFamily, Group, Signal, Subgroup};

#[allow(dead_code)]
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[allow(dead_code)]
pub fn random_signal(rng: &mut ChaCha8Rng, group: &Arc<Group>) -> Signal {
    let values = (0..group.order())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Signal::new(Arc::clone(group), values).expect("length")
}

#[allow(dead_code)]
pub fn random_family(rng: &mut ChaCha8Rng, group: &Arc<Group>, len: usize) -> GeneratorFamily {
    GeneratorFamily::new((0..len).map(|_| random_signal(rng, group)).collect()).expect("nonempty")
}

/// Random product group with order at most `max_order`.
#[allow(dead_code)]
pub fn random_product_group(rng: &mut ChaCha8Rng, max_order: usize) -> Arc<Group> {
    loop {
        let d = rng.gen_range(1..=3);
        let orders: Vec<usize> = (0..d).map(|_| rng.gen_range(1..=8)).collect();
        if orders.iter().product::<usize>() <= max_order {
            return Arc::new(Group::product(&orders).expect("valid orders"));
        }
    }
}

/// Random stride subgroup of a product group.
#[allow(dead_code)]
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

/// Random (group, abelian subgroup) pair, mostly abelian product groups
/// with an occasional non-abelian S3-based instance.
#[allow(dead_code)]
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    max_order: usize,
    allow_nonabelian: bool,
) -> (Arc<Group>, Arc<Subgroup>) {
    if allow_nonabelian && rng.gen_ratio(1, 5) {
        let g = Arc::new(symmetric_group_s3());
        let sub = if rng.gen_bool(0.5) {
            // The rotation subgroup of order 3.
            Arc::new(Subgroup::from_generators(Arc::clone(&g), &[1]).expect("abelian"))
        } else {
            Arc::new(Subgroup::from_generators(Arc::clone(&g), &[3]).expect("abelian"))
        };
        return (g, sub);
    }
    let g = random_product_group(rng, max_order);
    let sub = random_stride_subgroup(rng, &g);
    (g, sub)
}
