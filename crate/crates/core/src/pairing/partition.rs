//! The three-region partition of the critical strip.
//!
//! For modulus `q` and smoothness function value `f = f(q)`:
//!
//! ```text
//! R1 = { 0 < σ < 1,  |t| ≥ 1 }
//! R3 = { 1/f ≤ σ ≤ 1 − 1/f,  |t| < 1 }                        (closed in σ)
//! R2 = { 0 < σ(1−σ) < (1/f)(1 − 1/f),  t_cut ≤ |t| < 1 }      (closed at t_cut)
//! Q  = the rest of the strip
//! ```
//!
//! with `t_cut = 1 − 1/√(f log q)`. Classification order R1 → R3 → R2 → Q
//! reproduces exactly these sets: once R3 has consumed `1/f ≤ σ ≤ 1−1/f`,
//! the remaining σ automatically satisfy the strict `σ(1−σ)` inequality.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Partition parameters: modulus, `f(q)`, and the derived cuts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionParams {
    pub q: u64,
    pub f: f64,
    /// `ε(q) = 2/√(f log q)`: the shift used downstream of Lemma 3.
    pub eps_q: f64,
    /// `1 − 1/√(f log q)`: the lower |t| edge of R2.
    pub t_cut: f64,
    /// `1/f`: the σ edge of R3.
    pub sigma_cut: f64,
}

impl PartitionParams {
    /// Builds the derived cuts for `q ≥ 3` and `f ≥ 2`.
    ///
    /// (`q = 2` would give `t_cut < 0.15`; still valid, but `q ≥ 3` keeps
    /// `f·log q ≥ 2 log 3 > 2` so `eps_q < √2`, the range every bound here
    /// assumes.)
    pub fn new(q: u64, f: f64) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("partition needs q ≥ 2, got {q}")));
        }
        if !f.is_finite() || f < 2.0 {
            return Err(Error::invalid(format!("partition needs f ≥ 2, got {f}")));
        }
        let flq = f * (q as f64).ln();
        let root = flq.sqrt();
        Ok(PartitionParams {
            q,
            f,
            eps_q: 2.0 / root,
            t_cut: 1.0 - 1.0 / root,
            sigma_cut: 1.0 / f,
        })
    }
}

/// One of the partition's four labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    R1,
    R2,
    R3,
    Q,
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionLabel::R1 => write!(f, "R1"),
            RegionLabel::R2 => write!(f, "R2"),
            RegionLabel::R3 => write!(f, "R3"),
            RegionLabel::Q => write!(f, "Q"),
        }
    }
}

/// Classifies a strip point. Errors outside the open strip `0 < σ < 1`.
pub fn classify(s: Complex64, params: &PartitionParams) -> Result<RegionLabel> {
    let sigma = s.re;
    let t_abs = s.im.abs();
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::domain(format!(
            "classify: s = {s} outside the open critical strip"
        )));
    }
    if t_abs >= 1.0 {
        return Ok(RegionLabel::R1);
    }
    if sigma >= params.sigma_cut && sigma <= 1.0 - params.sigma_cut {
        return Ok(RegionLabel::R3);
    }
    if t_abs >= params.t_cut {
        return Ok(RegionLabel::R2);
    }
    Ok(RegionLabel::Q)
}
