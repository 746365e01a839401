//! Zero-sum identities at `s = 1`.
//!
//! For primitive non-principal χ mod q, logarithmic differentiation of the
//! completed function at `s = 1` gives the exact identity
//!
//! ```text
//! ½ ∑_ϱ Π₀(ϱ) = log q + 2 Re L′/L(1, χ) − (γ + log 2π + χ(−1) log 2)
//! ```
//!
//! (the even/odd cases merge via `ψ(1/2) = −γ − 2 log 2`, `ψ(1) = −γ`), and
//! for any `0 < ε ≤ 1` the shifted sum satisfies
//! `½ ∑_ϱ Π_ε(ϱ) = log q + O(1/ε)`. Both are checked here against truncated
//! sums with explicit tail budgets.

use crate::arith::DirichletCharacter;
use crate::error::{Error, Result};
use crate::harness::{scalar_map, ReportMeta, VerificationReport};
use crate::lfunc::log_deriv_at_1;
use crate::special::EULER_GAMMA;
use crate::zeros::{truncated_pi0_sum, truncated_pi_sum, TailConstants, ZeroSet};

fn require_primitive_nonprincipal(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter {
            modulus: chi.modulus(),
        });
    }
    if !chi.is_primitive() {
        return Err(Error::domain(format!(
            "zero-sum identities need a primitive character; modulus {} index {} has conductor {}",
            chi.modulus(),
            chi.index(),
            chi.conductor()
        )));
    }
    Ok(())
}

/// The exact identity: residual between `½ ∑_{|γ|≤T} Π₀(ϱ)` and
/// `log q + 2 Re L′/L(1,χ) − (γ + log 2π + χ(−1) log 2)`, with tolerance
/// `tail_bound(T)/2 + 1e−3`.
pub fn lemma1_ii_residual(
    chi: &DirichletCharacter,
    t_max: f64,
    tail: &TailConstants,
    set: &ZeroSet,
) -> Result<VerificationReport> {
    require_primitive_nonprincipal(chi)?;
    let p = truncated_pi0_sum(chi, t_max, tail, set)?;
    let ll = log_deriv_at_1(chi)?;
    let q = chi.modulus() as f64;
    let chi_minus_one = if chi.is_even() { 1.0 } else { -1.0 };
    let constant = EULER_GAMMA + (2.0 * std::f64::consts::PI).ln() + chi_minus_one * 2f64.ln();
    let lhs = 0.5 * p.sum;
    let rhs = q.ln() + 2.0 * ll.re - constant;
    let residual = (lhs - rhs).abs();
    let tolerance = 0.5 * p.tail_bound + 1e-3;
    Ok(VerificationReport::new(
        format!("lemma1_ii/q={}/idx={}/T={t_max}", chi.modulus(), chi.index()),
        scalar_map([
            ("q", q),
            ("index", chi.index() as f64),
            ("t_max", t_max),
            ("c1", tail.c1),
            ("c2", tail.c2),
        ]),
        scalar_map([
            ("zero_sum", p.sum),
            ("lhs", lhs),
            ("rhs", rhs),
            ("re_log_deriv", ll.re),
            ("tail_bound", p.tail_bound),
            ("located", p.located_count as f64),
            ("bucketed", p.bucket_count as f64),
            ("unreliable", if p.unreliable { 1.0 } else { 0.0 }),
        ]),
        residual,
        tolerance,
        ReportMeta {
            t: Some(t_max),
            ..ReportMeta::default()
        },
    ))
}

/// The `ε`-shifted sum: `|½ ∑_{|γ|≤T} Π_ε(ϱ) − log q| ≤ 2/ε + K` plus the
/// truncation tail, for `0 < ε ≤ 1`. `K` materializes the identity's `O(1)`.
pub fn lemma1_i_check(
    chi: &DirichletCharacter,
    eps: f64,
    t_max: f64,
    k: f64,
    tail: &TailConstants,
    set: &ZeroSet,
) -> Result<VerificationReport> {
    require_primitive_nonprincipal(chi)?;
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::invalid(format!("lemma1_i needs 0 < ε ≤ 1, got {eps}")));
    }
    let p = truncated_pi_sum(chi, eps, t_max, tail, set)?;
    let q = chi.modulus() as f64;
    let lhs = 0.5 * p.sum;
    let residual = (lhs - q.ln()).abs();
    let tolerance = 2.0 / eps + k + 0.5 * p.tail_bound;
    Ok(VerificationReport::new(
        format!(
            "lemma1_i/q={}/idx={}/eps={eps}/T={t_max}",
            chi.modulus(),
            chi.index()
        ),
        scalar_map([
            ("q", q),
            ("index", chi.index() as f64),
            ("eps", eps),
            ("t_max", t_max),
            ("k", k),
            ("c1", tail.c1),
            ("c2", tail.c2),
        ]),
        scalar_map([
            ("zero_sum", p.sum),
            ("lhs", lhs),
            ("log_q", q.ln()),
            ("tail_bound", p.tail_bound),
            ("located", p.located_count as f64),
            ("bucketed", p.bucket_count as f64),
            ("unreliable", if p.unreliable { 1.0 } else { 0.0 }),
        ]),
        residual,
        tolerance,
        ReportMeta {
            t: Some(t_max),
            ..ReportMeta::default()
        },
    ))
}
