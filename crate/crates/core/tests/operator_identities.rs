//! Cross-pipeline identities: the fiber operators against the dense
//! signal-domain matrices.

mod common;

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use zakframes_core::{
    dtft, frame_bounds, range_function, translate, FiberOperatorSet, ZakFamily, ZakPlan,
};
use zakframes_group::Signal;
use zakframes_oracle as oracle;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn synthesis_columns_are_translates() {
    let mut rng = common::rng(31);
    for _ in 0..25 {
        let (g, s) = common::random_pair(&mut rng, 48, true);
        let n_gen = 1 + rng.gen_range(0..3usize);
        let fam = common::random_family(&mut rng, &g, n_gen);
        let syn = oracle::synthesis_matrix(&fam, &s).unwrap();
        for (t, phi) in fam.iter().enumerate() {
            for (i, &gamma) in s.elements().iter().enumerate() {
                let want = translate(phi, gamma).unwrap();
                let col = syn.matrix().column(t * s.order() + i);
                for x in 0..g.order() {
                    assert!((col[x] - want.value(x)).norm() < 1e-15);
                }
            }
        }
    }
}

/// The transform of a synthesized coefficient array lands in the fiber
/// image of the pre-Gramian: `Z(T* h)(α) = J_A(α) {ĥ_t(α)}_t`.
#[test]
fn synthesis_transforms_through_the_pre_gramian() {
    let mut rng = common::rng(32);
    for _ in 0..25 {
        let (g, s) = common::random_pair(&mut rng, 48, true);
        let plan = ZakPlan::new(Arc::clone(&g), Arc::clone(&s)).unwrap();
        let n_gen = 1 + rng.gen_range(0..3);
        let fam = common::random_family(&mut rng, &g, n_gen);
        let zfam = ZakFamily::transform(&fam, &plan).unwrap();
        let ops = FiberOperatorSet::new(&zfam);

        // Random coefficients h_t(gamma).
        let coeffs: Vec<Vec<Complex64>> = (0..n_gen)
            .map(|_| {
                (0..s.order())
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect()
            })
            .collect();

        // Signal-domain synthesis sum.
        let mut synthesized = Signal::zeros(Arc::clone(&g));
        for (t, h_t) in coeffs.iter().enumerate() {
            for (i, &gamma) in s.elements().iter().enumerate() {
                let shifted = translate(fam.signal(t), gamma).unwrap();
                synthesized = synthesized.add(&shifted.scaled(h_t[i]));
            }
        }
        let z = plan.forward(&synthesized).unwrap();

        for alpha in 0..plan.n_fibers() {
            let hat: DVector<Complex64> = DVector::from_iterator(
                n_gen,
                coeffs.iter().map(|h_t| dtft(h_t, plan.chars(), alpha)),
            );
            let fiber = ops.pre_gramian(alpha) * hat;
            for (cc, want) in fiber.iter().enumerate() {
                let scale = 1.0 + want.norm();
                assert!(
                    (z.at(alpha, cc) - want).norm() / scale < 1e-9,
                    "fiber identity fails at alpha={alpha}"
                );
            }
        }
    }
}

/// `Z(T*_A T_{A'} f)(α) = J_A(α) J_{A'}(α)* Zf(α)`, with the left side
/// evaluated by the dense mixed operator.
#[test]
fn mixed_operator_transforms_through_the_dual_gramian() {
    let mut rng = common::rng(33);
    for _ in 0..25 {
        let (g, s) = common::random_pair(&mut rng, 48, true);
        let plan = ZakPlan::new(Arc::clone(&g), Arc::clone(&s)).unwrap();
        let n_gen = 1 + rng.gen_range(0..3);
        let a = common::random_family(&mut rng, &g, n_gen);
        let a2 = common::random_family(&mut rng, &g, n_gen);
        let za = ZakFamily::transform(&a, &plan).unwrap();
        let za2 = ZakFamily::transform(&a2, &plan).unwrap();
        let ops_a = FiberOperatorSet::new(&za);
        let ops_a2 = FiberOperatorSet::new(&za2);

        let f = common::random_signal(&mut rng, &g);
        let mixed = oracle::mixed_operator(&a, &a2, &s).unwrap();
        let sf_vec = &mixed * DVector::from_column_slice(f.values());
        let sf = Signal::new(Arc::clone(&g), sf_vec.iter().copied().collect()).unwrap();

        let z_sf = plan.forward(&sf).unwrap();
        let zf = plan.forward(&f).unwrap();
        for alpha in 0..plan.n_fibers() {
            let gt = ops_a.mixed_dual_gramian(&ops_a2, alpha).unwrap();
            let want = gt * DVector::from_column_slice(zf.fiber(alpha));
            for (cc, w) in want.iter().enumerate() {
                assert!(
                    (z_sf.at(alpha, cc) - w).norm() / (1.0 + w.norm()) < 1e-9,
                    "dual-Gramian identity fails"
                );
            }
        }
    }
}

#[test]
fn fiber_frame_bounds_match_the_dense_frame_operator() {
    let mut rng = common::rng(34);
    for _ in 0..100 {
        let (g, s) = common::random_pair(&mut rng, 48, true);
        let plan = ZakPlan::new(Arc::clone(&g), Arc::clone(&s)).unwrap();
        let n_gen = 1 + rng.gen_range(0..3usize);
        let fam = common::random_family(&mut rng, &g, n_gen);
        let zfam = ZakFamily::transform(&fam, &plan).unwrap();
        let fb = frame_bounds(&zfam, zakframes_core::tol::RANK).unwrap();
        let (lo, hi) = oracle::frame_bounds_oracle(&fam, &s, zakframes_core::tol::RANK).unwrap();
        assert!(
            (fb.bessel_bound - hi).abs() / (1.0 + hi) < 1e-8,
            "upper bounds disagree: {} vs {hi}",
            fb.bessel_bound
        );
        assert!(
            (fb.lower_bound - lo).abs() / (1.0 + lo) < 1e-8,
            "lower bounds disagree: {} vs {lo}",
            fb.lower_bound
        );

        // Analysis energies sit below the Bessel bound.
        let syn = oracle::synthesis_matrix(&fam, &s).unwrap();
        for _ in 0..5 {
            let f = common::random_signal(&mut rng, &g);
            let energy: f64 = syn.analysis(&f).iter().map(|v| v.norm_sqr()).sum();
            assert!(energy <= fb.bessel_bound * f.norm_sqr() * (1.0 + 1e-9));
        }
    }
}

#[test]
fn span_rank_equals_summed_fiber_ranks() {
    let mut rng = common::rng(35);
    for _ in 0..30 {
        let (g, s) = common::random_pair(&mut rng, 48, true);
        let plan = ZakPlan::new(Arc::clone(&g), Arc::clone(&s)).unwrap();
        let n_gen = 1 + rng.gen_range(0..3usize);
        let fam = common::random_family(&mut rng, &g, n_gen);
        let zfam = ZakFamily::transform(&fam, &plan).unwrap();
        let fiber_total: usize = (0..plan.n_fibers())
            .map(|alpha| range_function(&zfam, alpha, zakframes_core::tol::RANK).1)
            .sum();
        let dense = oracle::span_rank(&fam, &s, zakframes_core::tol::RANK).unwrap();
        assert_eq!(fiber_total, dense, "rank bookkeeping disagrees");
    }
}
