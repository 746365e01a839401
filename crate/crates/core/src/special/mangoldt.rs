//! Von Mangoldt function Λ(n) via a smallest-prime-factor sieve.
//!
//! `Λ(n) = log p` when `n = p^k` and `0` otherwise. Explicit-formula checks
//! sum `χ(n) Λ(n)` up to `x ≈ 10^4..10^6`, so the sieve is built once and
//! queried densely.

/// Smallest-prime-factor sieve supporting Λ(n) lookups up to a fixed limit.
#[derive(Debug, Clone)]
pub struct MangoldtSieve {
    spf: Vec<u32>,
}

impl MangoldtSieve {
    /// Builds the sieve for `n ≤ limit`. Memory: 4 bytes per integer.
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        MangoldtSieve { spf }
    }

    /// Largest `n` the sieve covers.
    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Λ(n): `log p` if `n` is a prime power `p^k`, else `0`. Panics if `n`
    /// exceeds the sieve limit.
    pub fn von_mangoldt(&self, n: u64) -> f64 {
        let n = n as usize;
        assert!(n <= self.limit(), "Λ({n}) beyond sieve limit {}", self.limit());
        if n < 2 {
            return 0.0;
        }
        let p = self.spf[n] as usize;
        // n is a prime power iff dividing out p completely reaches 1.
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }

    /// Whether `n` is prime (n ≥ 2 and its smallest prime factor is itself).
    pub fn is_prime(&self, n: u64) -> bool {
        let n = n as usize;
        assert!(n <= self.limit());
        n >= 2 && self.spf[n] as usize == n
    }

    /// Smallest prime factor of `n ≥ 2`.
    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        let n = n as usize;
        assert!((2..=self.limit()).contains(&n));
        self.spf[n] as u64
    }
}

/// Chebyshev `ψ(x) = Σ_{n ≤ x} Λ(n)` computed from the sieve.
pub fn chebyshev_psi(sieve: &MangoldtSieve, x: f64) -> f64 {
    let top = x.floor() as usize;
    assert!(top <= sieve.limit());
    let mut sum = 0.0;
    for n in 2..=top {
        sum += sieve.von_mangoldt(n as u64);
    }
    sum
}
