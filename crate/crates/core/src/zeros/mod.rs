//! Non-trivial zeros of L(s, χ): argument-principle counting, localization
//! with Newton refinement, and truncated sums over zeros with a tail model.
//!
//! Counting is the winding number of `L` around a rectangle, computed from
//! adaptively sampled phase increments (each wrapped increment is kept below
//! π/2 by bisecting edges). Localization subdivides a strip rectangle until
//! every piece holds at most one zero, refines by Newton on `L/L′`, and
//! certifies each zero by re-counting a radius-1e−6 box around it.
//!
//! Above `BUCKET_THRESHOLD` the per-zero work stops: sums over zeros switch
//! to per-unit-height bucket counts `[t, t+1)` with a single pairing value
//! per bucket, and everything beyond the requested height is absorbed into
//! an explicit tail bound
//!
//! ```text
//! tail(T) = 4c₁(log(qT) + 1)/T + 4c₂/T,
//! ```
//!
//! the `4/t²` majorant integrated against `d[c₁ t log(qt) + c₂]`.

mod locate;
mod pi0sum;
mod winding;

pub use locate::{largest_real_zero, locate_zeros};
pub use pi0sum::{truncated_pi0_sum, truncated_pi_sum, Pi0Sum};
pub(crate) use pi0sum::zero_functional_sum;
pub use winding::{count_zeros_rect, count_zeros_rect_with, WindingConfig};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Height above which zero sums use bucket counting instead of localization.
pub const BUCKET_THRESHOLD: f64 = 50.0;

/// A closed axis-aligned rectangle in the s-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rect {
    /// Validates `−0.5 < σ_lo ≤ σ_hi < 1.5` and `t_lo ≤ t_hi`.
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        let r = Rect {
            sigma_lo,
            sigma_hi,
            t_lo,
            t_hi,
        };
        if !(sigma_lo > -0.5 && sigma_lo <= sigma_hi && sigma_hi < 1.5) {
            return Err(Error::invalid(format!(
                "rectangle σ-range [{sigma_lo}, {sigma_hi}] must sit inside (−0.5, 1.5)"
            )));
        }
        if !(t_lo <= t_hi) || !t_lo.is_finite() || !t_hi.is_finite() {
            return Err(Error::invalid(format!(
                "rectangle t-range [{t_lo}, {t_hi}] is invalid"
            )));
        }
        Ok(r)
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.width() == 0.0 || self.height() == 0.0
    }

    pub(crate) fn translate(&self, d_sigma: f64, d_t: f64) -> Rect {
        Rect {
            sigma_lo: self.sigma_lo + d_sigma,
            sigma_hi: self.sigma_hi + d_sigma,
            t_lo: self.t_lo + d_t,
            t_hi: self.t_hi + d_t,
        }
    }

    pub(crate) fn center(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            0.5 * (self.sigma_lo + self.sigma_hi),
            0.5 * (self.t_lo + self.t_hi),
        )
    }
}

/// One located zero `ρ = β + iγ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zero {
    pub beta: f64,
    pub gamma: f64,
    /// `|L(ρ, χ)|` at the reported point.
    pub residual: f64,
    /// Newton converged and a count-1 box of radius 1e−6 surrounds the point.
    pub certified: bool,
}

/// All located zeros of one character up to a height, plus the independent
/// argument-principle count over the same search box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub modulus: u64,
    pub character_index: u64,
    /// Exponent vector of the character (part of the cache identity).
    pub exponents: Vec<u64>,
    pub height_t: f64,
    /// Newton tolerance the zeros were refined to.
    pub tol: f64,
    /// Sorted by γ ascending.
    pub zeros: Vec<Zero>,
    pub count_by_argument: usize,
    /// A sub-rectangle reached minimal size still holding > 1 zero, or the
    /// list length disagrees with the winding count.
    pub multiplicity_suspected: bool,
}

impl ZeroSet {
    /// Human-readable cache key; hashed by the cache layer.
    pub fn cache_key(modulus: u64, exponents: &[u64], height_t: f64, tol: f64) -> String {
        let exps = exponents
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(".");
        format!("zeros/q={modulus}/exps={exps}/tmax={height_t}/tol={tol:e}")
    }

    /// Zeros with `|γ| ≤ t_cap`.
    pub fn below(&self, t_cap: f64) -> impl Iterator<Item = &Zero> {
        self.zeros.iter().filter(move |z| z.gamma.abs() <= t_cap)
    }

    pub fn all_certified(&self) -> bool {
        self.zeros.iter().all(|z| z.certified)
    }

    /// Max distance from any zero to its nearest `1 − ρ̄` partner in the set
    /// (`0` for an empty set). The functional equation makes this ≈ 0.
    pub fn reflection_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for z in &self.zeros {
            let (pb, pg) = (1.0 - z.beta, z.gamma);
            let nearest = self
                .zeros
                .iter()
                .map(|w| ((w.beta - pb).powi(2) + (w.gamma - pg).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
        worst
    }

    /// Same for the conjugation partner `ρ̄` (meaningful for real χ).
    pub fn conjugation_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for z in &self.zeros {
            let nearest = self
                .zeros
                .iter()
                .map(|w| ((w.beta - z.beta).powi(2) + (w.gamma + z.gamma).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
        worst
    }
}

/// Constants of the zero-counting tail model `N(t) ≤ c₁·t·log(qt) + c₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailConstants {
    pub c1: f64,
    pub c2: f64,
}

impl Default for TailConstants {
    fn default() -> Self {
        TailConstants { c1: 1.0, c2: 10.0 }
    }
}

impl TailConstants {
    /// `∫_T^∞ (4/t²) d[c₁ t log(qt) + c₂] = 4c₁(log(qT)+1)/T + 4c₂/T`.
    pub fn tail_bound(&self, q: u64, t: f64) -> f64 {
        4.0 * self.c1 * ((q as f64 * t).ln() + 1.0) / t + 4.0 * self.c2 / t
    }

    /// Checks `N(t) ≤ c₁·t·log(qt) + c₂` against a located set (one-sided
    /// count of zeros with `0 < γ ≤ t`, doubled, on integer heights).
    pub fn validate_against(&self, set: &ZeroSet) -> bool {
        let q = set.modulus as f64;
        let mut t = 1.0;
        while t <= set.height_t {
            let n = set.zeros.iter().filter(|z| z.gamma.abs() <= t).count() as f64;
            if n > self.c1 * t * (q * t).ln() + self.c2 {
                return false;
            }
            t += 1.0;
        }
        true
    }
}
