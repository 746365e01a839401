//! The two-sided pairing inequalities on R1/R2/R3 and their proof-level
//! internals.
//!
//! On each region, for admissible ε:
//!
//! ```text
//! R1: Π_ε/(1+2ε) < Π_0 < (1 + ε²/(1+ε)) Π_ε,           ε > 0
//! R2: Π_ε/(1+2ε) < Π_0 < (1 + 70ε²/(1+ε)) Π_ε,         ε ≥ 2/√(f log q)
//! R3: Π_ε/((1+2ε)(1+2ε(1+ε)f)) < Π_0 ≤ (1 + εf) Π_ε,   ε > 0
//! ```
//!
//! plus the two proof displays: the lower-bound kernel
//!
//! ```text
//! Π_0 − Π_ε/(1+2ε) ≥ 2 · (−1 + 2σ̃ + ε(1+ε) + t²)/D_ε · ε(1+ε)/(1+t²)
//! D_ε = σ̃² + (1−2σ̃)t² + t⁴ + ε(1+ε)(2σ̃ + ε(1+ε) + 2t²)
//! ```
//!
//! and the g-weighted comparison
//!
//! ```text
//! Π_0 − Π_ε/((1+2ε)(1+g)) ≥
//!   2·[ (σ̃ − σ̃_ε/(1+g)) + ((1 − 1/(1+g)) + (σ̃ − σ̃_ε/(1+g)))t² + (1 − 1/(1+g))t⁴ ]
//!     / (σ̃² + (1−2σ̃)t² + t⁴) · 1/(1+t²),
//! ```
//!
//! strictly positive whenever `g ≥ ε(1+ε)/σ̃`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::partition::{classify, PartitionParams, RegionLabel};
use super::{pi_eps, GOLDEN_EPS};
use crate::error::{Error, Result};

/// Result of one two-sided margin check.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Lemma2Margins {
    pub region: RegionLabel,
    /// `Π_0 − (region's lower bound)`; positive means the bound holds.
    pub lower_margin: f64,
    /// `(region's upper bound) − Π_0`; positive (≥ 0 on R3) means it holds.
    pub upper_margin: f64,
    /// The δ used on the upper side.
    pub delta: f64,
    pub pi0: f64,
    pub pi_eps: f64,
}

/// Two-sided margins at `s` for shift `eps`, under the partition `params`.
///
/// Errors when `s ∈ Q` (the inequalities say nothing there) or when `eps` is
/// inadmissible for the region (R2 requires `eps ≥ ε(q)`; all need `eps > 0`).
pub fn lemma2_check(s: Complex64, eps: f64, params: &PartitionParams) -> Result<Lemma2Margins> {
    let region = classify(s, params)?;
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InadmissibleEpsilon {
            epsilon: eps,
            region: region.to_string(),
            context: "shift must be positive".into(),
        });
    }
    if region == RegionLabel::Q {
        return Err(Error::domain(format!(
            "lemma2_check: s = {s} lies in Q, where the bounds make no claim"
        )));
    }
    if region == RegionLabel::R2 && eps < params.eps_q {
        return Err(Error::InadmissibleEpsilon {
            epsilon: eps,
            region: "R2".into(),
            context: format!("R2 requires eps ≥ ε(q) = {}", params.eps_q),
        });
    }

    let pi0 = pi_eps(0.0, s)?;
    let pie = pi_eps(eps, s)?;
    let f = params.f;
    let (lower_bound, delta) = match region {
        RegionLabel::R1 => (pie / (1.0 + 2.0 * eps), eps * eps / (1.0 + eps)),
        RegionLabel::R2 => (pie / (1.0 + 2.0 * eps), 70.0 * eps * eps / (1.0 + eps)),
        RegionLabel::R3 => (
            pie / ((1.0 + 2.0 * eps) * (1.0 + 2.0 * eps * (1.0 + eps) * f)),
            eps * f,
        ),
        RegionLabel::Q => unreachable!(),
    };
    Ok(Lemma2Margins {
        region,
        lower_margin: pi0 - lower_bound,
        upper_margin: (1.0 + delta) * pie - pi0,
        delta,
        pi0,
        pi_eps: pie,
    })
}

/// Proof-level quantities at a strip point.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Lemma2Internal {
    /// Measured `Π_0 − Π_ε/(1+2ε)`.
    pub kernel_gap: f64,
    /// The lower-bound kernel's right-hand side.
    pub kernel_rhs: f64,
    /// Measured `Π_0 − Π_ε/((1+2ε)(1+g))`.
    pub comp_gap: f64,
    /// The g-weighted display's right-hand side.
    pub comp_rhs: f64,
    /// Whether `g ≥ ε(1+ε)/σ̃` (the sufficiency condition for `comp_rhs > 0`).
    pub g_sufficient: bool,
}

/// Evaluates both proof displays at `s` with shift `eps` and weight `g`.
pub fn lemma2_internal(s: Complex64, eps: f64, g: f64) -> Result<Lemma2Internal> {
    let sigma = s.re;
    let t = s.im;
    if sigma.is_nan() || sigma <= 0.0 || sigma >= 1.0 {
        return Err(Error::domain(format!("lemma2_internal: {s} outside strip")));
    }
    if !eps.is_finite() || eps <= 0.0 || !g.is_finite() || g <= 0.0 {
        return Err(Error::invalid(format!(
            "lemma2_internal needs eps > 0 and g > 0, got eps = {eps}, g = {g}"
        )));
    }
    let st = sigma * (1.0 - sigma);
    let ee = eps * (1.0 + eps);
    let st_eps = st + ee;
    let t2 = t * t;
    let t4 = t2 * t2;

    let pi0 = pi_eps(0.0, s)?;
    let pie = pi_eps(eps, s)?;

    // Kernel display.
    let d_eps = st * st + (1.0 - 2.0 * st) * t2 + t4 + ee * (2.0 * st + ee + 2.0 * t2);
    let kernel_rhs = 2.0 * (-1.0 + 2.0 * st + ee + t2) / d_eps * ee / (1.0 + t2);
    let kernel_gap = pi0 - pie / (1.0 + 2.0 * eps);

    // g-weighted display.
    let d0 = st * st + (1.0 - 2.0 * st) * t2 + t4;
    let shrink = 1.0 - 1.0 / (1.0 + g);
    let head = st - st_eps / (1.0 + g);
    let comp_rhs = 2.0 * (head + (shrink + head) * t2 + shrink * t4) / d0 / (1.0 + t2);
    let comp_gap = pi0 - pie / ((1.0 + 2.0 * eps) * (1.0 + g));

    Ok(Lemma2Internal {
        kernel_gap,
        kernel_rhs,
        comp_gap,
        comp_rhs,
        g_sufficient: g >= ee / st,
    })
}

/// Golden-ratio margin `Π_0(s) − Π_φ(s)/(1+2φ)`, strictly positive on the
/// whole strip because `φ(1+φ) = 1` makes the kernel numerator
/// `−1 + 2σ̃ + φ(1+φ) + t² = 2σ̃ + t² > 0`.
pub fn golden_lower(s: Complex64) -> Result<f64> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::domain(format!("golden_lower: {s} outside strip")));
    }
    Ok(pi_eps(0.0, s)? - pi_eps(GOLDEN_EPS, s)? / (1.0 + 2.0 * GOLDEN_EPS))
}

/// Coefficient `B(ε, f)` with `|Π_0 − Π_ε| ≤ B·Π_ε` on R1 ∪ R2 ∪ R3 for
/// admissible ε, assembled from the same δ's and lower factors as
/// [`lemma2_check`]:
///
/// ```text
/// B = max( ε²/(1+ε), 70ε²/(1+ε), εf,
///          1 − 1/(1+2ε), 1 − 1/((1+2ε)(1+2ε(1+ε)f)) )
/// ```
///
/// With `ε = ε(q) = 2/√(f log q)` this is the Lemma 3 factor: every term is
/// `O(√(f/log q))`, the dominant one being `εf = 2√(f/log q)`.
pub fn lemma3_bound_coefficient(eps: f64, f: f64) -> f64 {
    let upper = (eps * eps / (1.0 + eps))
        .max(70.0 * eps * eps / (1.0 + eps))
        .max(eps * f);
    let lower = (1.0 - 1.0 / (1.0 + 2.0 * eps))
        .max(1.0 - 1.0 / ((1.0 + 2.0 * eps) * (1.0 + 2.0 * eps * (1.0 + eps) * f)));
    upper.max(lower)
}
