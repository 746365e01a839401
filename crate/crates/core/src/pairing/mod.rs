//! The pairing function `Π_ε` and the critical-strip machinery around it:
//! region partition, inequality margins, and seeded sampling.
//!
//! For `s = σ + it` in the strip and a real shift `ε ≥ 0`,
//!
//! ```text
//! Π_ε(s) = 1/(s+ε) + 1/(s̄+ε) + 1/(1−s+ε) + 1/(1−s̄+ε)
//!        = 2(σ+ε)/((σ+ε)² + t²) + 2(1−σ+ε)/((1−σ+ε)² + t²),
//! ```
//!
//! a real number. Everything in this module is a real-analysis fact about
//! this one function; no characters or L-values appear.

pub mod lemma2;
pub mod partition;
pub mod sampler;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use lemma2::{
    golden_lower, lemma2_check, lemma2_internal, lemma3_bound_coefficient, Lemma2Internal,
    Lemma2Margins,
};
pub use partition::{classify, PartitionParams, RegionLabel};
pub use sampler::{lemma2_sample, SampleOutcome, StripSampler};

/// The golden-ratio shift `φ = (√5−1)/2`, the unique positive solution of
/// `φ(1+φ) = 1`.
pub const GOLDEN_EPS: f64 = 0.618_033_988_749_894_8;

/// Absolute threshold below which a vanishing pairing denominator is treated
/// as a pole (legitimately huge finite values pass through).
const POLE_GUARD: f64 = 1e-12;

/// `Π_ε(s)`: the four-term pairing sum, evaluated in its real closed form.
///
/// Errors only when a denominator vanishes to within `1e−12` — that is, at
/// the actual poles `s ∈ {−ε, 1+ε}` on the real axis.
pub fn pi_eps(eps: f64, s: Complex64) -> Result<f64> {
    let sigma = s.re;
    let t = s.im;
    let a = sigma + eps;
    let b = 1.0 - sigma + eps;
    let da = a * a + t * t;
    let db = b * b + t * t;
    if da < POLE_GUARD * POLE_GUARD || db < POLE_GUARD * POLE_GUARD {
        return Err(Error::PoleEvaluation {
            context: format!("Π_{eps}({s}) has a vanishing denominator"),
        });
    }
    Ok(2.0 * a / da + 2.0 * b / db)
}

/// `Π_ε(s)/2` by the defining four-term sum in complex arithmetic
/// (reference form for the algebraic-identity tests).
pub fn pi_eps_half_defining(eps: f64, s: Complex64) -> Result<f64> {
    let one = Complex64::new(1.0, 0.0);
    let terms = [s + eps, s.conj() + eps, one - s + eps, one - s.conj() + eps];
    let mut sum = Complex64::new(0.0, 0.0);
    for z in terms {
        if z.norm() < POLE_GUARD {
            return Err(Error::PoleEvaluation {
                context: format!("pairing term 1/({z}) at s = {s}"),
            });
        }
        sum += z.finv();
    }
    debug_assert!(sum.im.abs() < 1e-10 * (1.0 + sum.re.abs()));
    Ok(sum.re / 2.0)
}

/// `Π_ε(s)/2` via the factored form: `σ̃_ε = (σ+ε)(1−σ+ε) = σ̃ + ε(1+ε)`,
///
/// ```text
/// Π_ε/2 = [σ̃_ε + (1+σ̃_ε)t² + t⁴] / [σ̃_ε² + ((1+2ε)² − 2σ̃_ε)t² + t⁴] · (1+2ε)/(1+t²).
/// ```
pub fn pi_eps_half_form0(eps: f64, sigma: f64, t: f64) -> f64 {
    let st_eps = sigma * (1.0 - sigma) + eps * (1.0 + eps);
    let t2 = t * t;
    let t4 = t2 * t2;
    let one_2eps = 1.0 + 2.0 * eps;
    let num = st_eps + (1.0 + st_eps) * t2 + t4;
    let den = st_eps * st_eps + (one_2eps * one_2eps - 2.0 * st_eps) * t2 + t4;
    num / den * one_2eps / (1.0 + t2)
}

/// `Π_ε(s)/2` via the ε-split form, whose correction term drives the Lemma 2
/// bounds:
///
/// ```text
/// Π_ε/2 = [1 + (σ̃(1−σ̃) + 3σ̃t² + ε(1+ε)(1 − 2σ̃ − ε(1+ε) − t²)) / D_ε] · (1+2ε)/(1+t²),
/// D_ε   = σ̃² + (1−2σ̃)t² + t⁴ + ε(1+ε)(2σ̃ + ε(1+ε) + 2t²).
/// ```
pub fn pi_eps_half_form_split(eps: f64, sigma: f64, t: f64) -> f64 {
    let st = sigma * (1.0 - sigma);
    let ee = eps * (1.0 + eps);
    let t2 = t * t;
    let t4 = t2 * t2;
    let num = st * (1.0 - st) + 3.0 * st * t2 + ee * (1.0 - 2.0 * st - ee - t2);
    let den = st * st + (1.0 - 2.0 * st) * t2 + t4 + ee * (2.0 * st + ee + 2.0 * t2);
    (1.0 + num / den) * (1.0 + 2.0 * eps) / (1.0 + t2)
}

/// Maximum pairwise discrepancy among the three evaluations of `Π_ε(s)/2`
/// (defining sum, factored form, ε-split form). An algebraic identity, so
/// this should sit at rounding level throughout the strip.
pub fn pi_forms_residual(sigma: f64, t: f64, eps: f64) -> Result<f64> {
    let s = Complex64::new(sigma, t);
    let a = pi_eps_half_defining(eps, s)?;
    let b = pi_eps_half_form0(eps, sigma, t);
    let c = pi_eps_half_form_split(eps, sigma, t);
    Ok((a - b).abs().max((a - c).abs()).max((b - c).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn golden_constant_satisfies_its_equation() {
        assert!((GOLDEN_EPS * (1.0 + GOLDEN_EPS) - 1.0).abs() < 1e-15);
        assert!((GOLDEN_EPS - (5f64.sqrt() - 1.0) / 2.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn closed_form_values() {
        // Π_0(1/2) = 8, Π_1(1/2) = 8/3, Π_0(1/4) = 2/(1/4) + 2/(3/4) = 32/3.
        assert!((pi_eps(0.0, c(0.5, 0.0)).unwrap() - 8.0).abs() < 1e-14);
        assert!((pi_eps(1.0, c(0.5, 0.0)).unwrap() - 8.0 / 3.0).abs() < 1e-14);
        assert!((pi_eps(0.0, c(0.25, 0.0)).unwrap() - 32.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn symmetries_are_exact() {
        // Π_ε(s) = Π_ε(s̄) = Π_ε(1−s̄), bitwise (same arithmetic path).
        for &(sig, t, eps) in &[(0.3, 0.7, 0.2), (0.01, 0.0, 0.5), (0.9, -4.0, 1.3)] {
            let a = pi_eps(eps, c(sig, t)).unwrap();
            let b = pi_eps(eps, c(sig, -t)).unwrap();
            let cc = pi_eps(eps, c(1.0 - sig, t)).unwrap();
            assert_eq!(a, b);
            assert!((a - cc).abs() < 1e-13 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn pole_guard_fires_only_at_poles() {
        assert!(pi_eps(0.0, c(0.0, 0.0)).is_err());
        assert!(pi_eps(0.5, c(-0.5, 0.0)).is_err());
        assert!(pi_eps(0.0, c(1.0, 0.0)).is_err());
        // Near-pole but legitimate: huge finite value.
        let v = pi_eps(0.0, c(1e-9, 0.0)).unwrap();
        assert!(v > 1e8);
    }

    #[test]
    fn three_forms_agree_at_spec_points() {
        // (0.3, 0.7, 0.1) and the symmetric point (0.5, 0, 1).
        assert!(pi_forms_residual(0.3, 0.7, 0.1).unwrap() < 1e-12);
        assert!(pi_forms_residual(0.5, 0.0, 1.0).unwrap() < 1e-12);
        // Symmetric point value: all forms give Π_1(1/2)/2 = 4/3.
        assert!((pi_eps_half_form0(1.0, 0.5, 0.0) - 4.0 / 3.0).abs() < 1e-14);
        assert!((pi_eps_half_form_split(1.0, 0.5, 0.0) - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn forms_agree_on_grid() {
        for i in 1..20 {
            for j in -10..=10i32 {
                for &eps in &[0.01, 0.1, 0.618, 1.0, 3.0] {
                    let sigma = i as f64 / 20.0;
                    let t = j as f64 / 5.0;
                    let r = pi_forms_residual(sigma, t, eps).unwrap();
                    let scale = pi_eps_half_form0(eps, sigma, t).abs();
                    assert!(
                        r < 1e-10 * (1.0 + scale),
                        "forms disagree at ({sigma}, {t}, {eps}): {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn monotone_decreasing_in_eps_on_real_segment() {
        for i in 1..10 {
            let sigma = i as f64 / 10.0;
            let mut last = f64::INFINITY;
            for k in 0..40 {
                let eps = k as f64 * 0.05;
                let v = pi_eps(eps, c(sigma, 0.0)).unwrap();
                assert!(v < last, "Π not decreasing in ε at σ={sigma}, ε={eps}");
                last = v;
            }
        }
    }

    #[test]
    fn defining_form_matches_closed_form() {
        for &(sig, t) in &[(0.5, 0.3), (0.1, 1.7), (0.99, 0.0)] {
            let s = c(sig, t);
            for &eps in &[0.0, 0.25, GOLDEN_EPS] {
                let closed = pi_eps(eps, s).unwrap();
                let defining = 2.0 * pi_eps_half_defining(eps, s).unwrap();
                assert!((closed - defining).abs() < 1e-12 * (1.0 + closed.abs()));
            }
        }
    }
}
