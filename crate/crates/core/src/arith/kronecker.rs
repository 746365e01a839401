//! Kronecker symbol `(a|n)`: the completely multiplicative extension of the
//! Legendre symbol to all integer pairs.
//!
//! Conventions: `(a|0) = 1` iff `a = ±1` (else 0); `(a|−1) = 1` for `a ≥ 0`,
//! `−1` for `a < 0`; `(a|2) = 0` for even `a`, `+1` for `a ≡ ±1 (mod 8)`,
//! `−1` for `a ≡ ±3 (mod 8)`.

/// Kronecker symbol `(a|n) ∈ {−1, 0, 1}`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    // Both even ⇒ 0.
    if a & 1 == 0 && n & 1 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Split n = 2^v · n', using (a|2) per the convention above.
    let mut v = 0u32;
    while n & 1 == 0 {
        n >>= 1;
        v += 1;
    }
    if v > 0 {
        if a & 1 == 0 {
            return 0;
        }
        if v & 1 == 1 {
            let m = a.rem_euclid(8);
            if m == 3 || m == 5 {
                result = -result;
            }
        }
    }
    // Now n is odd and positive: Jacobi-symbol loop with reciprocity.
    a = a.rem_euclid(n);
    while a != 0 {
        let mut va = 0u32;
        while a & 1 == 0 {
            a >>= 1;
            va += 1;
        }
        if va & 1 == 1 {
            let m = n % 8;
            if m == 3 || m == 5 {
                result = -result;
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        let t = a;
        a = n % t;
        n = t;
    }
    if n == 1 {
        result
    } else {
        0
    }
}
