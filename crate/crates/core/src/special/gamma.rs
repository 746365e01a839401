//! Digamma and log-gamma on the complex plane.
//!
//! Both are computed by the classical recipe: shift the argument right with
//! the recurrence until `Re z` is large enough for the Stirling series, then
//! apply the asymptotic expansion
//!
//! ```text
//! ψ(z)   ~ ln z − 1/(2z) − Σ_{k≥1} B_{2k} / (2k · z^{2k})
//! lnΓ(z) ~ (z − 1/2) ln z − z + ln(2π)/2 + Σ_{k≥1} B_{2k} / (2k(2k−1) z^{2k−1})
//! ```
//!
//! Arguments with `Re z ≤ 0` near the real axis are handled by reflection.
//! `log_gamma` returns *a* logarithm of `Γ(z)` (correct real part, imaginary
//! part correct modulo `2π`); every consumer in this crate either needs
//! `Re lnΓ` (magnitudes) or arguments modulo `2π` (winding), so no attempt is
//! made to produce the globally continuous branch.

use num_complex::Complex64;

use super::bernoulli::BERNOULLI_EVEN;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Re z threshold beyond which the Stirling series is applied directly.
const STIRLING_CUTOFF: f64 = 18.0;
/// Number of Bernoulli terms used in the asymptotic series.
const STIRLING_TERMS: usize = 12;

/// Digamma function ψ(z) = Γ′(z)/Γ(z) for complex `z`.
///
/// Poles at the non-positive integers are not special-cased; evaluating there
/// returns non-finite values, and callers that could hit them must guard.
pub fn digamma(z: Complex64) -> Complex64 {
    // Reflection for the left half-plane: ψ(z) = ψ(1−z) − π cot(πz).
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        let cot = (pi * z).cos() / (pi * z).sin();
        return digamma(Complex64::new(1.0, 0.0) - z) - pi * cot;
    }
    // Recurrence: ψ(z) = ψ(z + 1) − 1/z.
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_CUTOFF {
        shift -= w.finv();
        w += 1.0;
    }
    // Stirling series at w.
    let mut series = w.ln() - 0.5 * w.finv();
    let w2_inv = (w * w).finv();
    let mut power = w2_inv;
    for (k, &b2k) in BERNOULLI_EVEN.iter().enumerate().take(STIRLING_TERMS + 1).skip(1) {
        series -= b2k / (2.0 * k as f64) * power;
        power *= w2_inv;
    }
    series + shift
}

/// Digamma restricted to positive real arguments (the common case for
/// character sums at `s = 1`).
pub fn digamma_real(x: f64) -> f64 {
    digamma(Complex64::new(x, 0.0)).re
}

/// A logarithm of Γ(z): exact real part, imaginary part modulo 2π.
///
/// For `Re z > 0` away from the real axis this agrees with the principal
/// branch; in general only `exp(log_gamma(z)) = Γ(z)` is guaranteed.
pub fn log_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: lnΓ(z) = ln π − ln sin(πz) − lnΓ(1−z), modulo 2πi.
        let pi = std::f64::consts::PI;
        let sin = (pi * z).sin();
        return Complex64::new(pi.ln(), 0.0) - sin.ln() - log_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_CUTOFF {
        shift -= w.ln();
        w += 1.0;
    }
    let half_ln_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut series = (w - 0.5) * w.ln() - w + half_ln_two_pi;
    let w_inv = w.finv();
    let w2_inv = w_inv * w_inv;
    let mut power = w_inv;
    for (k, &b2k) in BERNOULLI_EVEN.iter().enumerate().take(STIRLING_TERMS + 1).skip(1) {
        let tk = 2.0 * k as f64;
        series += b2k / (tk * (tk - 1.0)) * power;
        power *= w2_inv;
    }
    series + shift
}

/// `Re lnΓ(z) = ln |Γ(z)|`, valid for all non-pole `z`.
pub fn ln_abs_gamma(z: Complex64) -> f64 {
    log_gamma(z).re
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn digamma_classical_closed_forms() {
        let ln2 = std::f64::consts::LN_2;
        let pi = std::f64::consts::PI;
        // ψ(1) = −γ
        assert!((digamma_real(1.0) + EULER_GAMMA).abs() < TOL);
        // ψ(1/2) = −γ − 2 ln 2
        assert!((digamma_real(0.5) - (-EULER_GAMMA - 2.0 * ln2)).abs() < TOL);
        // ψ(1/4) = −γ − 3 ln 2 − π/2
        assert!((digamma_real(0.25) - (-EULER_GAMMA - 3.0 * ln2 - pi / 2.0)).abs() < TOL);
        // ψ(3/4) = −γ − 3 ln 2 + π/2
        assert!((digamma_real(0.75) - (-EULER_GAMMA - 3.0 * ln2 + pi / 2.0)).abs() < TOL);
        // ψ(2) = 1 − γ
        assert!((digamma_real(2.0) - (1.0 - EULER_GAMMA)).abs() < TOL);
    }

    #[test]
    fn digamma_recurrence_and_reflection() {
        // ψ(z+1) − ψ(z) = 1/z on a grid of complex points.
        for &(re, im) in &[(0.3, 0.0), (0.7, 1.3), (2.2, -4.0), (0.1, 25.0), (5.5, 100.0)] {
            let z = Complex64::new(re, im);
            let lhs = digamma(z + 1.0) - digamma(z);
            let rhs = z.finv();
            assert!((lhs - rhs).norm() < 1e-11, "recurrence failed at {z}");
        }
        // Reflection: ψ(1−z) − ψ(z) = π cot(πz).
        for &(re, im) in &[(0.3, 0.4), (-1.2, 0.9), (0.25, -2.0)] {
            let z = Complex64::new(re, im);
            let pi = std::f64::consts::PI;
            let lhs = digamma(Complex64::new(1.0, 0.0) - z) - digamma(z);
            let rhs = pi * (pi * z).cos() / (pi * z).sin();
            assert!((lhs - rhs).norm() < 1e-11, "reflection failed at {z}");
        }
    }

    #[test]
    fn digamma_conjugate_symmetry() {
        let z = Complex64::new(0.8, 13.7);
        let a = digamma(z.conj());
        let b = digamma(z).conj();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn log_gamma_classical_values() {
        let pi = std::f64::consts::PI;
        // Γ(1/2) = √π
        let lg_half = log_gamma(Complex64::new(0.5, 0.0));
        assert!((lg_half.re - 0.5 * pi.ln()).abs() < TOL);
        assert!(lg_half.im.abs() < TOL);
        // Γ(5) = 24
        let lg5 = log_gamma(Complex64::new(5.0, 0.0));
        assert!((lg5.re - 24.0f64.ln()).abs() < TOL);
        // Γ(1/4) = 3.6256099082219083119...
        let lg_q = log_gamma(Complex64::new(0.25, 0.0));
        assert!((lg_q.re - 3.625_609_908_221_908_f64.ln()).abs() < TOL);
    }

    #[test]
    fn log_gamma_exponentiates_to_gamma_recurrence() {
        // exp(lnΓ(z+1) − lnΓ(z)) = z even if the branches differ by 2πi.
        for &(re, im) in &[(0.2, 0.0), (1.3, 7.0), (-0.3, 2.0), (0.75, -40.0), (1.0, 300.0)] {
            let z = Complex64::new(re, im);
            let ratio = (log_gamma(z + 1.0) - log_gamma(z)).exp();
            assert!(
                (ratio - z).norm() < 1e-10 * (1.0 + z.norm()),
                "Γ recurrence failed at {z}: got {ratio}"
            );
        }
    }

    #[test]
    fn log_gamma_modulus_at_height() {
        // |Γ(it)| = sqrt(π / (t sinh(πt))); check Re lnΓ against it at t = 10.
        let t = 10.0;
        let pi = std::f64::consts::PI;
        let expect = 0.5 * (pi / (t * (pi * t).sinh())).ln();
        let got = ln_abs_gamma(Complex64::new(0.0, t));
        assert!((got - expect).abs() < 1e-11, "got {got}, expect {expect}");
    }

    #[test]
    fn digamma_asymptotic_sanity_large_imaginary() {
        // ψ(1/2 + it) ≈ ln(it) for large t; relative agreement ~ 1/t².
        let z = Complex64::new(0.5, 1000.0);
        let approx = z.ln();
        assert!((digamma(z) - approx).norm() < 1e-3);
    }
}
