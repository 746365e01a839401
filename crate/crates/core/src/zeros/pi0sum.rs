//! Truncated sums of the pairing function over zeros, `∑_{|γ|≤T} Π₀(ρ)`,
//! with located zeros below the bucket threshold and per-unit-height bucket
//! counts above it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::winding::{PhaseProbe, WindingConfig};
use super::{TailConstants, ZeroSet};
use crate::arith::DirichletCharacter;
use crate::error::{Error, Result};
use crate::pairing::pi_eps;

/// σ-range of the bucket contours; all non-trivial zeros at desk scale sit
/// deep inside.
const LADDER_SIGMA_LO: f64 = 1e-3;
const LADDER_SIGMA_HI: f64 = 1.0 - 1e-3;

/// A truncated zero sum with its tail model.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Pi0Sum {
    /// `∑_{|γ|≤T} Π₀(ρ)`: exact pairing values over located zeros, plus one
    /// midpoint pairing value per counted bucket above the located height.
    pub sum: f64,
    /// `4c₁(log(qT)+1)/T + 4c₂/T` for everything beyond `T`.
    pub tail_bound: f64,
    pub height_t: f64,
    /// Zeros taken from the located set.
    pub located_count: usize,
    /// Zeros accounted for by bucket counting (both half-planes).
    pub bucket_count: usize,
    /// Uncertified zeros contributed to the sum; trust accordingly.
    pub unreliable: bool,
}

/// `∑_{|γ|≤T} Π₀(ρ)` for the zeros of `L(s, χ)`.
///
/// `set` must hold located zeros of this very character up to at least
/// `min(T, set.height_t ≥ …)` — zeros with `|γ| ≤ min(T, set.height_t)`
/// enter the sum exactly; heights in `(set.height_t, T]` are covered by
/// argument-principle counts over `[t, t+1)` buckets, each bucket
/// contributing `count · Π₀(1/2 + i·t_mid)` (the pairing function varies
/// little across a unit bucket at those heights, and `|β−1/2|` is
/// negligible there at desk scale).
pub fn truncated_pi0_sum(
    chi: &DirichletCharacter,
    t_max: f64,
    tail: &TailConstants,
    set: &ZeroSet,
) -> Result<Pi0Sum> {
    truncated_pi_sum(chi, 0.0, t_max, tail, set)
}

/// `∑_{|γ|≤T} Π_ε(ρ)` with the same located/bucket split as
/// [`truncated_pi0_sum`]. The tail model scales by `1 + 2ε`, matching the
/// per-zero majorant `Π_ε(ρ) ≤ (1+2ε)·4/γ²` for zeros in the strip.
pub fn truncated_pi_sum(
    chi: &DirichletCharacter,
    eps: f64,
    t_max: f64,
    tail: &TailConstants,
    set: &ZeroSet,
) -> Result<Pi0Sum> {
    if !(eps >= 0.0) {
        return Err(Error::invalid(format!("eps must be ≥ 0, got {eps}")));
    }
    let (sum, located_count, bucket_count, unreliable) =
        zero_functional_sum(chi, t_max, set, &|rho| pi_eps(eps, rho))?;
    Ok(Pi0Sum {
        sum,
        tail_bound: (1.0 + 2.0 * eps) * tail.tail_bound(chi.modulus(), t_max),
        height_t: t_max,
        located_count,
        bucket_count,
        unreliable,
    })
}

/// `∑_{|γ|≤T} f(ρ)` for a pointwise functional of the zeros: exact over the
/// located set, `count · f(1/2 + i·t_mid)` per bucket above it.
///
/// Returns `(sum, located_count, bucket_count, unreliable)`.
pub(crate) fn zero_functional_sum(
    chi: &DirichletCharacter,
    t_max: f64,
    set: &ZeroSet,
    f: &dyn Fn(Complex64) -> Result<f64>,
) -> Result<(f64, usize, usize, bool)> {
    if set.modulus != chi.modulus() || set.character_index != chi.index() {
        return Err(Error::invalid(format!(
            "zero set belongs to modulus {} index {}, not modulus {} index {}",
            set.modulus,
            set.character_index,
            chi.modulus(),
            chi.index()
        )));
    }
    if !(t_max > 0.0) {
        return Err(Error::invalid(format!("t_max must be positive, got {t_max}")));
    }

    let located_cap = t_max.min(set.height_t);
    let mut sum = 0.0;
    let mut located_count = 0;
    let mut unreliable = false;
    for z in set.below(located_cap) {
        sum += f(Complex64::new(z.beta, z.gamma))?;
        located_count += 1;
        unreliable |= !z.certified;
    }

    let mut bucket_count = 0;
    if t_max > set.height_t {
        let upper = bucket_ladder(chi, set.height_t, t_max)?;
        let lower: Vec<(f64, usize)> = if chi.is_real() {
            upper.iter().map(|&(mid, n)| (-mid, n)).collect()
        } else {
            bucket_ladder(&chi.conjugate(), set.height_t, t_max)?
                .iter()
                .map(|&(mid, n)| (-mid, n))
                .collect()
        };
        for &(mid, n) in upper.iter().chain(lower.iter()) {
            if n == 0 {
                continue;
            }
            sum += n as f64 * f(Complex64::new(0.5, mid))?;
            bucket_count += n;
        }
    }

    Ok((sum, located_count, bucket_count, unreliable))
}

/// Per-bucket upper-half-plane zero counts of `L(s, χ)` over `[h0, h1]`,
/// returned as `(bucket midpoint, count)`.
///
/// The ladder shares work between adjacent buckets: each horizontal cut's
/// phase change is computed once and reused with opposite sign by the bucket
/// above, and the two vertical lines are walked in per-bucket chunks, so the
/// whole ladder costs one tall rectangle plus one horizontal edge per cut.
/// A cut running into a zero is nudged upward by the standard retry offsets;
/// the shifted height is then used consistently on both sides of the cut.
fn bucket_ladder(chi: &DirichletCharacter, h0: f64, h1: f64) -> Result<Vec<(f64, usize)>> {
    let probe = PhaseProbe::new(chi, WindingConfig::default());
    let c = |sigma: f64, t: f64| Complex64::new(sigma, t);

    // Cut heights: h0, h0+1, …, then h1 as a final (possibly short) cut.
    let mut cuts: Vec<f64> = Vec::new();
    let mut t = h0;
    while t < h1 {
        cuts.push(t);
        t += 1.0;
    }
    cuts.push(h1);

    // Horizontal phase changes (σ_lo → σ_hi), with per-cut nudging.
    let mut actual = Vec::with_capacity(cuts.len());
    let mut horizontal = Vec::with_capacity(cuts.len());
    for &cut in &cuts {
        let mut done = false;
        let mut last_err = None;
        for k in 0..=5u32 {
            let tk = cut + 1e-4 * k as f64;
            match probe.edge_change(c(LADDER_SIGMA_LO, tk), c(LADDER_SIGMA_HI, tk)) {
                Ok(h) => {
                    actual.push(tk);
                    horizontal.push(h);
                    done = true;
                    break;
                }
                Err(e @ (Error::ContourNearZero { .. } | Error::NoConvergence { .. })) => {
                    last_err = Some(e)
                }
                Err(e) => return Err(e),
            }
        }
        if !done {
            return Err(last_err.expect("at least one attempt ran"));
        }
    }

    let mut out = Vec::with_capacity(cuts.len() - 1);
    for i in 0..actual.len() - 1 {
        let (lo, hi) = (actual[i], actual[i + 1]);
        let right = probe.edge_change(c(LADDER_SIGMA_HI, lo), c(LADDER_SIGMA_HI, hi))?;
        let left = probe.edge_change(c(LADDER_SIGMA_LO, lo), c(LADDER_SIGMA_LO, hi))?;
        let total = horizontal[i] + right - horizontal[i + 1] - left;
        let turns = total / std::f64::consts::TAU;
        let n = turns.round();
        if (turns - n).abs() > 0.25 || n < 0.0 {
            return Err(Error::NoConvergence {
                iterations: 0,
                context: format!("bucket [{lo}, {hi}] winding {turns:.4} is not a count"),
            });
        }
        out.push((0.5 * (lo + hi), n as usize));
    }
    Ok(out)
}
