//! Ratio statistics of `L′/L(1, χ)` against `√(f(q)·log q)` normalizations,
//! and the unconditional golden-ratio lower bound scan.
//!
//! The headline bounds are asymptotic, so nothing here "verifies" them;
//! the scans compute the finite-q ratio statistics and record them for
//! regression pinning, plus the concrete inequality
//! `Re L′/L(1,χ) > −0.2764·log q − slack` which does admit a direct check
//! (the constant comes from `1/(2√5) − 1/2 > −0.2764`).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{chang_f, CharacterTable, DirichletCharacter, FactoredInteger};
use crate::error::{Error, Result};
use crate::harness::{scalar_map, ReportMeta, VerificationReport};
use crate::lfunc::LEvaluator;
use crate::zeros::largest_real_zero;

/// How `f(q)` is chosen in scans: the classical constant 2, or the
/// smoothness-driven shape with constant `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FMode {
    Classical,
    Chang { c: f64 },
}

impl FMode {
    pub fn f_of(&self, q: u64) -> f64 {
        match *self {
            FMode::Classical => 2.0,
            FMode::Chang { c } => chang_f(&FactoredInteger::from_u64(q), c, 1.0),
        }
    }
}

/// `|Re L′/L(1,χ)| / √(f·log q)` for complex primitive χ.
pub fn theorem_ratio(chi: &DirichletCharacter, f: f64) -> Result<f64> {
    check_f(f)?;
    if chi.is_real() || !chi.is_primitive() {
        return Err(Error::domain(format!(
            "theorem ratio wants a complex primitive character; modulus {} index {} is not",
            chi.modulus(),
            chi.index()
        )));
    }
    let ll = crate::lfunc::log_deriv_at_1(chi)?;
    Ok(ll.re.abs() / (f * (chi.modulus() as f64).ln()).sqrt())
}

/// `|L′/L(1,χ_D) − 1/(1−β_D)| / √(f·log|D|)` for real primitive χ_D, with
/// `β_D` the largest real zero (trivial fallback 0 / −1 when none is found
/// in `(0,1)`).
pub fn siegel_adjusted_ratio(chi: &DirichletCharacter, f: f64) -> Result<f64> {
    check_f(f)?;
    if !chi.is_real() || !chi.is_primitive() || chi.is_principal() {
        return Err(Error::domain(format!(
            "Siegel-adjusted ratio wants a real primitive character; modulus {} index {} is not",
            chi.modulus(),
            chi.index()
        )));
    }
    let beta = largest_real_zero(chi)?;
    let ll = crate::lfunc::log_deriv_at_1(chi)?;
    let adjusted = (ll.re - 1.0 / (1.0 - beta)).abs();
    Ok(adjusted / (f * (chi.modulus() as f64).ln()).sqrt())
}

fn check_f(f: f64) -> Result<()> {
    if !f.is_finite() || f < 2.0 {
        return Err(Error::invalid(format!("normalization needs f ≥ 2, got {f}")));
    }
    Ok(())
}

/// One scanned character.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub q: u64,
    pub index: u64,
    pub real: bool,
    pub f: f64,
    pub ratio: f64,
}

/// A full scan with its extremes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioScan {
    pub f_mode: FMode,
    pub q_max: u64,
    pub rows: Vec<RatioRow>,
    /// Max over complex primitive characters, with its (q, index).
    pub max_complex: Option<(f64, u64, u64)>,
    /// Max Siegel-adjusted ratio over real primitive characters.
    pub max_real: Option<(f64, u64, u64)>,
}

/// Scans all primitive non-principal characters of modulus `3..=q_max`:
/// complex χ get [`theorem_ratio`], real χ get [`siegel_adjusted_ratio`].
/// Rows come back in canonical `(q, index)` order regardless of scheduling.
pub fn ratio_scan(q_max: u64, mode: FMode) -> Result<RatioScan> {
    if q_max < 3 {
        return Err(Error::invalid(format!("ratio scan needs q_max ≥ 3, got {q_max}")));
    }
    let per_q: Vec<Result<Vec<RatioRow>>> = (3..=q_max)
        .into_par_iter()
        .map(|q| {
            let f = mode.f_of(q);
            let table = CharacterTable::new(q);
            let evaluator = LEvaluator::new(table.clone());
            let evals = evaluator.evaluate_group(num_complex::Complex64::new(1.0, 0.0))?;
            let mut rows = Vec::new();
            for e in evals {
                let chi = table.character(e.character_index)?;
                if chi.is_principal() || !chi.is_primitive() {
                    continue;
                }
                let value = e.value;
                if value.norm() < 1e-12 {
                    return Err(Error::NearZeroDenominator {
                        value: value.norm(),
                        context: format!("L(1, χ) for modulus {q} index {}", e.character_index),
                    });
                }
                let ll = e.derivative.expect("group evaluation carries derivatives") / value;
                let ratio = if chi.is_real() {
                    let beta = largest_real_zero(&chi)?;
                    (ll.re - 1.0 / (1.0 - beta)).abs() / (f * (q as f64).ln()).sqrt()
                } else {
                    ll.re.abs() / (f * (q as f64).ln()).sqrt()
                };
                rows.push(RatioRow {
                    q,
                    index: e.character_index,
                    real: chi.is_real(),
                    f,
                    ratio,
                });
            }
            rows.sort_by_key(|r| r.index);
            Ok(rows)
        })
        .collect();

    let mut rows = Vec::new();
    for r in per_q {
        rows.extend(r?);
    }
    let best = |real: bool| {
        rows.iter()
            .filter(|r| r.real == real)
            .fold(None::<(f64, u64, u64)>, |acc, r| match acc {
                Some((m, _, _)) if m >= r.ratio => acc,
                _ => Some((r.ratio, r.q, r.index)),
            })
    };
    Ok(RatioScan {
        f_mode: mode,
        q_max,
        max_complex: best(false),
        max_real: best(true),
        rows,
    })
}

/// Checks `Re L′/L(1,χ) > −0.2764·log q − slack` for every primitive
/// non-principal χ mod `q ≤ q_max`. The report's residual is the worst
/// violation depth (0 when none).
pub fn golden_bound_scan(q_max: u64, slack: f64) -> Result<VerificationReport> {
    if q_max < 3 || !slack.is_finite() || slack < 0.0 {
        return Err(Error::invalid(format!(
            "golden scan needs q_max ≥ 3 and slack ≥ 0, got q_max={q_max}, slack={slack}"
        )));
    }
    let per_q: Vec<Result<Vec<(u64, u64, f64)>>> = (3..=q_max)
        .into_par_iter()
        .map(|q| {
            let table = CharacterTable::new(q);
            let evaluator = LEvaluator::new(table.clone());
            let evals = evaluator.evaluate_group(num_complex::Complex64::new(1.0, 0.0))?;
            let bound = -0.2764 * (q as f64).ln() - slack;
            let mut margins = Vec::new();
            for e in evals {
                let chi = table.character(e.character_index)?;
                if chi.is_principal() || !chi.is_primitive() {
                    continue;
                }
                if e.value.norm() < 1e-12 {
                    return Err(Error::NearZeroDenominator {
                        value: e.value.norm(),
                        context: format!("L(1, χ) for modulus {q} index {}", e.character_index),
                    });
                }
                let ll = e.derivative.expect("group evaluation carries derivatives") / e.value;
                margins.push((q, e.character_index, ll.re - bound));
            }
            Ok(margins)
        })
        .collect();

    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut worst: Option<(u64, u64, f64)> = None;
    for r in per_q {
        for (q, idx, margin) in r? {
            checked += 1;
            if margin <= 0.0 {
                violations += 1;
            }
            if worst.is_none_or(|(_, _, m)| margin < m) {
                worst = Some((q, idx, margin));
            }
        }
    }
    let (wq, widx, min_margin) = worst.ok_or_else(|| {
        Error::domain(format!("no primitive non-principal characters up to {q_max}"))
    })?;
    Ok(VerificationReport::new(
        format!("golden/qmax={q_max}"),
        scalar_map([("q_max", q_max as f64), ("slack", slack)]),
        scalar_map([
            ("min_margin", min_margin),
            ("worst_q", wq as f64),
            ("worst_index", widx as f64),
            ("characters_checked", checked as f64),
            ("violations", violations as f64),
        ]),
        (-min_margin).max(0.0),
        0.0,
        ReportMeta::default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::quadratic_character;

    #[test]
    fn ratio_is_conjugation_invariant_and_nonnegative() {
        let table = CharacterTable::new(5);
        let chi = table
            .enumerate()
            .into_iter()
            .find(|c| !c.is_real())
            .unwrap();
        let a = theorem_ratio(&chi, 2.0).unwrap();
        let b = theorem_ratio(&chi.conjugate(), 2.0).unwrap();
        assert!(a >= 0.0);
        assert_eq!(a, b, "Re L′/L is shared between χ and χ̄");
    }

    #[test]
    fn siegel_adjustment_uses_the_trivial_fallback() {
        // χ₋₄ is odd with no real zero in (0,1) at desk scale, so the
        // adjustment subtracts 1/(1−(−1)) = 1/2 exactly.
        let chi = quadratic_character(-4).unwrap();
        let ll = crate::lfunc::log_deriv_at_1(&chi).unwrap();
        let expect = (ll.re - 0.5).abs() / (2.0 * 4f64.ln()).sqrt();
        let got = siegel_adjusted_ratio(&chi, 2.0).unwrap();
        assert!((got - expect).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let chi4 = quadratic_character(-4).unwrap();
        assert!(theorem_ratio(&chi4, 2.0).is_err(), "real character rejected");
        assert!(siegel_adjusted_ratio(&chi4, 1.0).is_err(), "f < 2 rejected");
        let table = CharacterTable::new(5);
        let complex = table.enumerate().into_iter().find(|c| !c.is_real()).unwrap();
        assert!(siegel_adjusted_ratio(&complex, 2.0).is_err());
        assert!(theorem_ratio(&complex, f64::NAN).is_err());
    }

    #[test]
    fn small_scan_is_deterministic_and_canonically_ordered() {
        let a = ratio_scan(20, FMode::Classical).unwrap();
        let b = ratio_scan(20, FMode::Classical).unwrap();
        assert_eq!(a, b);
        let keys: Vec<(u64, u64)> = a.rows.iter().map(|r| (r.q, r.index)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(a.max_complex.is_some() && a.max_real.is_some());
        // Every row agrees with the single-character entry points.
        let table = CharacterTable::new(a.rows[0].q);
        let chi = table.character(a.rows[0].index).unwrap();
        let direct = if chi.is_real() {
            siegel_adjusted_ratio(&chi, 2.0).unwrap()
        } else {
            theorem_ratio(&chi, 2.0).unwrap()
        };
        assert!((direct - a.rows[0].ratio).abs() < 1e-12);
    }

    #[test]
    fn chang_mode_changes_the_normalization() {
        let scan = ratio_scan(12, FMode::Chang { c: 1.0 }).unwrap();
        for row in &scan.rows {
            assert!(row.f >= 2.0);
        }
        // Prime modulus clamps f to log q ⇒ differs from the classical 2.
        let prime_row = scan.rows.iter().find(|r| r.q == 11).unwrap();
        assert!((prime_row.f - 11f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn golden_scan_has_no_violations_at_small_q() {
        let r = golden_bound_scan(40, 0.5).unwrap();
        assert!(r.pass, "min margin {}", r.computed["min_margin"]);
        assert_eq!(r.computed["violations"], 0.0);
        assert!(r.computed["characters_checked"] > 0.0);
    }
}
