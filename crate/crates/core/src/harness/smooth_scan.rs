//! Smoothness scans: how `f(q)` compares to `log q` along very smooth
//! moduli sequences (factorials, primorial powers, or a custom list).

use serde::{Deserialize, Serialize};

use crate::arith::{chang_f, FactoredInteger};
use crate::error::{Error, Result};

/// The modulus sequence to scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SmoothSequence {
    /// `n!` for `n = 2..=n_max`.
    Factorials { n_max: u64 },
    /// `(p₁⋯p_n)^n` for `n = 1..=n_max`.
    PrimorialPowers { n_max: u64 },
    /// Explicit moduli, each ≥ 2.
    Custom(Vec<u64>),
}

/// One scanned modulus. `q` is `None` when the value exceeds 64 bits (the
/// statistics all come from the factorization, so nothing else degrades).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothRow {
    pub label: String,
    pub q: Option<u64>,
    pub log_q: f64,
    /// `𝒫(q)`: largest prime factor.
    pub max_prime: u64,
    /// Radical `q′`, when it fits in 64 bits.
    pub radical: Option<u64>,
    /// `K_q = log q / log q′`.
    pub k_q: f64,
    pub f: f64,
    /// `f(q) / log q` — the column whose decay certifies the improvement.
    pub f_ratio: f64,
    /// `log 𝒫(q) / log q` — the smoothness exponent.
    pub p_ratio: f64,
}

/// Tabulates `(q, 𝒫(q), q′, K_q, f(q), f(q)/log q)` along the sequence with
/// Chang's constant `c` (cap fixed at `1·log q`).
pub fn smooth_scan(sequence: &SmoothSequence, c: f64) -> Result<Vec<SmoothRow>> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid(format!("chang_f constant must be positive, got {c}")));
    }
    let items: Vec<(String, FactoredInteger)> = match sequence {
        SmoothSequence::Factorials { n_max } => {
            if *n_max < 2 {
                return Err(Error::invalid("factorial scan needs n_max ≥ 2"));
            }
            (2..=*n_max)
                .map(|n| (format!("{n}!"), FactoredInteger::factorial(n)))
                .collect()
        }
        SmoothSequence::PrimorialPowers { n_max } => {
            if *n_max < 1 {
                return Err(Error::invalid("primorial scan needs n_max ≥ 1"));
            }
            (1..=*n_max)
                .map(|n| (format!("P({n})^{n}"), FactoredInteger::primorial_power(n)))
                .collect()
        }
        SmoothSequence::Custom(qs) => {
            if qs.is_empty() || qs.iter().any(|&q| q < 2) {
                return Err(Error::invalid("custom scan needs moduli ≥ 2"));
            }
            qs.iter()
                .map(|&q| (q.to_string(), FactoredInteger::from_u64(q)))
                .collect()
        }
    };
    Ok(items
        .into_iter()
        .map(|(label, fi)| {
            let log_q = fi.log();
            let f = chang_f(&fi, c, 1.0);
            SmoothRow {
                label,
                q: fi.to_u64(),
                log_q,
                max_prime: fi.max_prime(),
                radical: fi.radical(),
                k_q: log_q / fi.log_radical(),
                f,
                f_ratio: f / log_q,
                p_ratio: (fi.max_prime() as f64).ln() / log_q,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_rows_have_the_expected_shape() {
        let rows = smooth_scan(&SmoothSequence::Factorials { n_max: 12 }, 1.0).unwrap();
        assert_eq!(rows.len(), 11);
        let r8 = rows.iter().find(|r| r.label == "8!").unwrap();
        assert_eq!(r8.q, Some(40320));
        assert_eq!(r8.max_prime, 7);
        assert_eq!(r8.radical, Some(210));
        assert!((r8.k_q - 40320f64.ln() / 210f64.ln()).abs() < 1e-12);
        assert!(r8.f >= 2.0 && r8.f <= r8.log_q.max(2.0));
    }

    #[test]
    fn f_ratio_is_strictly_decreasing_from_8_factorial() {
        let rows = smooth_scan(&SmoothSequence::Factorials { n_max: 12 }, 1.0).unwrap();
        let tail: Vec<&SmoothRow> = rows
            .iter()
            .filter(|r| {
                let n: u64 = r.label.trim_end_matches('!').parse().unwrap();
                n >= 8
            })
            .collect();
        assert_eq!(tail.len(), 5);
        for pair in tail.windows(2) {
            assert!(
                pair[1].f_ratio < pair[0].f_ratio,
                "{} → {}: {} vs {}",
                pair[0].label,
                pair[1].label,
                pair[0].f_ratio,
                pair[1].f_ratio
            );
        }
    }

    #[test]
    fn smoothness_exponent_dips_at_prime_free_stretches_only() {
        // log 𝒫(n!)/log(n!) is NOT monotone: a new prime at n = 11 bumps it.
        let rows = smooth_scan(&SmoothSequence::Factorials { n_max: 12 }, 1.0).unwrap();
        let p = |label: &str| rows.iter().find(|r| r.label == label).unwrap().p_ratio;
        assert!(p("9!") < p("8!"));
        assert!(p("10!") < p("9!"));
        assert!(p("11!") > p("10!"), "11 becomes the largest prime factor");
        assert!(p("12!") < p("11!"));
    }

    #[test]
    fn prime_modulus_ratio_clamps_to_one() {
        let rows = smooth_scan(&SmoothSequence::Custom(vec![101, 40320]), 1.0).unwrap();
        assert!((rows[0].f_ratio - 1.0).abs() < 1e-12, "𝒫(q) = q forces f = log q");
        assert!(rows[1].f_ratio < 1.0);
    }

    #[test]
    fn primorial_powers_are_very_smooth() {
        let rows = smooth_scan(&SmoothSequence::PrimorialPowers { n_max: 6 }, 1.0).unwrap();
        let last = rows.last().unwrap();
        assert_eq!(last.max_prime, 13);
        assert!(last.p_ratio < 0.2);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(smooth_scan(&SmoothSequence::Factorials { n_max: 1 }, 1.0).is_err());
        assert!(smooth_scan(&SmoothSequence::Custom(vec![]), 1.0).is_err());
        assert!(smooth_scan(&SmoothSequence::Custom(vec![1]), 1.0).is_err());
        assert!(smooth_scan(&SmoothSequence::Factorials { n_max: 10 }, 0.0).is_err());
    }
}
