//! Seeded cross-module property tests: the Hurwitz recurrence, the three
//! algebraic forms of the pairing function, the strip partition against its
//! literal defining inequalities, and the pointwise shift-comparison bound.

use lbox_core::pairing::{
    classify, lemma3_bound_coefficient, pi_eps, pi_eps_half_form0, pi_forms_residual,
    PartitionParams, RegionLabel, StripSampler,
};
use lbox_core::special::{hurwitz_zeta, EulerMaclaurinConfig};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn hurwitz_recurrence_at_100_seeded_points() {
    // ζ(s, a) = ζ(s, a+1) + a^{−s}, relative error ≤ 1e−10 against the
    // scale of the identity's terms.
    let cfg = EulerMaclaurinConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut checked = 0;
    while checked < 100 {
        let sigma = rng.random_range(-3.0..4.0);
        let t = rng.random_range(-40.0..40.0);
        let s = c(sigma, t);
        if (s - c(1.0, 0.0)).norm() < 0.05 {
            continue;
        }
        let a = rng.random_range(0.05..3.0);
        let lhs = hurwitz_zeta(s, a, &cfg).unwrap();
        let rhs = hurwitz_zeta(s, a + 1.0, &cfg).unwrap() + (-s * a.ln()).exp();
        let scale = lhs.norm().max((-s * a.ln()).exp().norm()).max(1.0);
        assert!(
            (lhs - rhs).norm() <= 1e-10 * scale,
            "recurrence defect {} at s = {s}, a = {a}",
            (lhs - rhs).norm() / scale
        );
        checked += 1;
    }
}

#[test]
fn pairing_forms_agree_at_ten_thousand_seeded_points() {
    // The defining four-term sum, the factored form, and the ε-split form
    // of Π_ε(s)/2 are one algebraic identity: agreement to 1e−10 relative.
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    for _ in 0..10_000 {
        let sigma = 1e-4 + 0.9998 * rng.random::<f64>();
        let t = rng.random_range(-10.0..10.0);
        let eps = rng.random_range(1e-6..1.5);
        let residual = pi_forms_residual(sigma, t, eps).unwrap();
        let scale = pi_eps_half_form0(eps, sigma, t).abs().max(1.0);
        assert!(
            residual <= 1e-10 * scale,
            "forms disagree by {residual} (scale {scale}) at σ = {sigma}, t = {t}, ε = {eps}"
        );
    }
}

#[test]
fn classification_matches_literal_region_definitions() {
    // classify() against the raw inequalities, applied in the same
    // R1 → R3 → R2 → Q precedence, at 10⁵ seeded points per config.
    let configs = [
        PartitionParams::new(101, 2.0).unwrap(),
        PartitionParams::new(3_628_800, 11.513131253224748).unwrap(),
    ];
    for params in configs {
        let f = params.f;
        let literal = |sigma: f64, t: f64| -> RegionLabel {
            if t.abs() >= 1.0 {
                RegionLabel::R1
            } else if sigma >= 1.0 / f && sigma <= 1.0 - 1.0 / f {
                RegionLabel::R3
            } else if sigma * (1.0 - sigma) > 0.0
                && sigma * (1.0 - sigma) < (1.0 / f) * (1.0 - 1.0 / f)
                && t.abs() >= params.t_cut
            {
                RegionLabel::R2
            } else {
                RegionLabel::Q
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1003);
        let mut counts = [0usize; 4];
        for _ in 0..100_000 {
            let sigma = 1e-9 + (1.0 - 2e-9) * rng.random::<f64>();
            let t = rng.random_range(-2.0..2.0);
            let got = classify(c(sigma, t), &params).unwrap();
            let want = literal(sigma, t);
            assert_eq!(got, want, "σ = {sigma}, t = {t}, q = {}", params.q);
            counts[match got {
                RegionLabel::R1 => 0,
                RegionLabel::R2 => 1,
                RegionLabel::R3 => 2,
                RegionLabel::Q => 3,
            }] += 1;
        }
        // The box |t| < 2 genuinely exercises the labels (R3 is the
        // measure-zero line σ = 1/2 when f = 2, so only demand it for f > 2).
        assert!(counts[0] > 0 && counts[1] > 0 && counts[3] > 0, "coverage {counts:?}");
        if params.f > 2.0 {
            assert!(counts[2] > 0, "R3 unexercised: {counts:?}");
        }
    }
}

#[test]
fn lemma3_pointwise_shift_comparison_bound() {
    // |Π_0(s) − Π_ε(s)| ≤ B(ε, f)·Π_ε(s) on R1 ∪ R2 ∪ R3 with the closed-form
    // coefficient, at seeded points of each region for both reference configs.
    let configs = [
        PartitionParams::new(101, 2.0).unwrap(),
        PartitionParams::new(3_628_800, 11.513131253224748).unwrap(),
    ];
    for params in configs {
        let eps = params.eps_q;
        let bound = lemma3_bound_coefficient(eps, params.f);
        assert!(bound.is_finite() && bound > 0.0);
        let sampler = StripSampler::new(1004);
        for region in [RegionLabel::R1, RegionLabel::R2, RegionLabel::R3] {
            for &s in &sampler.sample_region(&params, region, 2000).unwrap() {
                let pi0 = pi_eps(0.0, s).unwrap();
                let pie = pi_eps(eps, s).unwrap();
                let slack = 1e-12 * (1.0 + pi0.abs());
                assert!(
                    (pi0 - pie).abs() <= bound * pie + slack,
                    "q = {}, {region}: |Π_0 − Π_ε| = {} > B·Π_ε = {} at s = {s}",
                    params.q,
                    (pi0 - pie).abs(),
                    bound * pie
                );
            }
        }
    }
}
