//! Smoothness statistics `𝒫(q)`, `q′`, `K_q`, `𝓛(q)` and the Chang-style
//! quasi-zero-free-region function `f(q)`.
//!
//! Integers are carried in factored form so factorials far beyond `u64`
//! stay exact: `log q`, `𝒫(q)` and the radical come straight from the
//! factorization, never from a materialized product.

use super::factor::factorize;

/// An integer `≥ 2` in factored form with its natural log.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredInteger {
    /// `(p, e)` pairs, p ascending, e ≥ 1.
    factors: Vec<(u64, u32)>,
    log_value: f64,
}

impl FactoredInteger {
    /// Factors a plain integer `q ≥ 2`.
    pub fn from_u64(q: u64) -> Self {
        assert!(q >= 2, "smoothness statistics need q ≥ 2");
        FactoredInteger {
            factors: factorize(q),
            log_value: (q as f64).ln(),
        }
    }

    /// `n!` for `n ≥ 2`, via Legendre's formula (exact for any `n`, no bigints).
    pub fn factorial(n: u64) -> Self {
        assert!(n >= 2);
        let mut factors = Vec::new();
        for p in 2..=n {
            if factorize(p).len() == 1 && factorize(p)[0].1 == 1 {
                // p prime: exponent Σ_{i≥1} ⌊n/pⁱ⌋.
                let mut e = 0u32;
                let mut pk = p;
                loop {
                    e += (n / pk) as u32;
                    match pk.checked_mul(p) {
                        Some(next) if next <= n => pk = next,
                        _ => break,
                    }
                }
                factors.push((p, e));
            }
        }
        let log_value = (2..=n).map(|k| (k as f64).ln()).sum();
        FactoredInteger { factors, log_value }
    }

    /// `(p₁ p₂ ⋯ p_n)^n`: the n-th primorial raised to the n-th power — a
    /// convenient very-smooth test sequence.
    pub fn primorial_power(n: u64) -> Self {
        assert!(n >= 1);
        let mut primes = Vec::new();
        let mut candidate = 2u64;
        while (primes.len() as u64) < n {
            if factorize(candidate).len() == 1 && factorize(candidate)[0].1 == 1 {
                primes.push(candidate);
            }
            candidate += 1;
        }
        let factors: Vec<(u64, u32)> = primes.iter().map(|&p| (p, n as u32)).collect();
        let log_value = n as f64 * primes.iter().map(|&p| (p as f64).ln()).sum::<f64>();
        FactoredInteger { factors, log_value }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// `ln q`.
    pub fn log(&self) -> f64 {
        self.log_value
    }

    /// The value as `u64`, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }

    /// `𝒫(q)`: largest prime factor.
    pub fn max_prime(&self) -> u64 {
        self.factors.last().map(|&(p, _)| p).expect("q ≥ 2 has a prime factor")
    }

    /// Radical `q′ = ∏_{p|q} p` as a value (when it fits).
    pub fn radical(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for &(p, _) in &self.factors {
            acc = acc.checked_mul(p)?;
        }
        Some(acc)
    }

    /// `ln q′`.
    pub fn log_radical(&self) -> f64 {
        self.factors.iter().map(|&(p, _)| (p as f64).ln()).sum()
    }
}

/// The smoothness statistics of one modulus, plus its `f(q)` value.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SmoothnessProfile {
    /// `q` itself when it fits in 64 bits (factorials beyond 20! do not).
    pub q: Option<u64>,
    pub log_q: f64,
    /// `𝒫(q)`: largest prime factor.
    pub max_prime: u64,
    /// Radical `q′` when it fits.
    pub radical: Option<u64>,
    pub log_radical: f64,
    /// `K_q = log q / log q′ ≥ 1`.
    pub k_q: f64,
    /// `𝓛(q) = loglog q / loglog q′`, defined only for `q′ ≥ 3` (and `q ≥ 3`).
    pub l_q: Option<f64>,
    /// `f(q)` from [`chang_f`] with the profile's `(c, cap)`.
    pub f_value: f64,
}

impl SmoothnessProfile {
    pub fn new(q: &FactoredInteger, c: f64, cap: f64) -> Self {
        let radical = q.radical();
        let log_q = q.log();
        let log_rad = q.log_radical();
        let l_q = if radical.is_none_or(|r| r >= 3) && log_q.ln() > 0.0 && log_rad.ln() != 0.0 {
            Some(log_q.ln() / log_rad.ln())
        } else {
            None
        };
        SmoothnessProfile {
            q: q.to_u64(),
            log_q,
            max_prime: q.max_prime(),
            radical,
            log_radical: log_rad,
            k_q: log_q / log_rad,
            l_q,
            f_value: chang_f(q, c, cap),
        }
    }
}

/// Chang-style `f(q)`:
///
/// ```text
/// f(q) = clamp( (1/c) · max{ log 𝒫(q),
///                            log(q′) · log(2 K_q) / max(loglog q′, 1),
///                            (log q)^{9/10} },
///               2, cap·log q )
/// ```
///
/// The `max(loglog q′, 1)` guard keeps the middle term defined for `q′ < e^e`;
/// the clamp enforces the standing hypothesis `2 ≤ f(q) ≪ log q` (the upper
/// end is itself floored at 2 so tiny moduli stay in range).
pub fn chang_f(q: &FactoredInteger, c: f64, cap: f64) -> f64 {
    assert!(c > 0.0 && cap > 0.0);
    let log_q = q.log();
    let log_p = (q.max_prime() as f64).ln();
    let log_rad = q.log_radical();
    let k_q = log_q / log_rad;
    let loglog_rad_guarded = log_rad.ln().max(1.0);
    let term_mid = log_rad * (2.0 * k_q).ln() / loglog_rad_guarded;
    let term_pow = log_q.powf(0.9);
    let raw = log_p.max(term_mid).max(term_pow) / c;
    raw.clamp(2.0, (cap * log_q).max(2.0))
}
