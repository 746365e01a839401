//! Cyclic decomposition of the unit group `(ℤ/qℤ)×`.
//!
//! For odd prime powers the group is cyclic (generated by a primitive root);
//! for `2^e` with `e ≥ 3` it is `⟨−1⟩ × ⟨5⟩`. Local generators are lifted to
//! the full modulus by the Chinese Remainder Theorem so each returned
//! generator is ≡ 1 modulo every other prime-power factor.

use super::factor::{euler_phi, factorize, mul_mod, pow_mod};

/// One cyclic factor of `(ℤ/qℤ)×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitGenerator {
    /// Residue mod q generating this factor.
    pub generator: u64,
    /// Multiplicative order of `generator` mod q (the factor's size).
    pub order: u64,
}

/// Cyclic decomposition of `(ℤ/qℤ)×` as a list of independent generators.
///
/// The product of the orders is φ(q); `q = 1, 2` give the empty list.
/// Generator order is deterministic: ascending prime-power factor of q, with
/// the `⟨−1⟩` factor before the `⟨5⟩` factor at `p = 2`.
pub fn unit_group_structure(q: u64) -> Vec<UnitGenerator> {
    assert!(q >= 1);
    let mut gens = Vec::new();
    for (p, e) in factorize(q) {
        let pk = p.pow(e);
        let cofactor = q / pk;
        for (local_gen, order) in local_generators(p, e) {
            let lifted = crt_lift(local_gen, pk, cofactor);
            gens.push(UnitGenerator {
                generator: lifted,
                order,
            });
        }
    }
    gens
}

/// Generators of `(ℤ/p^eℤ)×` as residues mod `p^e`.
fn local_generators(p: u64, e: u32) -> Vec<(u64, u64)> {
    let pk = p.pow(e);
    if p == 2 {
        return match e {
            1 => vec![],
            2 => vec![(3, 2)],
            _ => vec![(pk - 1, 2), (5, pk / 4)],
        };
    }
    let g = primitive_root_mod_p_power(p, e);
    vec![(g, euler_phi(pk))]
}

/// A primitive root mod `p^e` for odd prime `p`.
fn primitive_root_mod_p_power(p: u64, e: u32) -> u64 {
    let g = primitive_root_mod_p(p);
    if e == 1 {
        return g;
    }
    // g lifts to p² (hence to all p^e) unless g^{p−1} ≡ 1 (mod p²).
    if pow_mod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// Smallest primitive root mod odd prime `p`.
fn primitive_root_mod_p(p: u64) -> u64 {
    let phi = p - 1;
    let prime_divs: Vec<u64> = factorize(phi).into_iter().map(|(d, _)| d).collect();
    'outer: for g in 2..p {
        for &d in &prime_divs {
            if pow_mod(g, phi / d, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

/// Lifts `residue` mod `pk` to the element of mod `pk·cofactor` that is
/// ≡ residue (mod pk) and ≡ 1 (mod cofactor).
fn crt_lift(residue: u64, pk: u64, cofactor: u64) -> u64 {
    if cofactor == 1 {
        return residue % pk;
    }
    let q = pk * cofactor;
    // x = residue + pk·t with pk·t ≡ 1 − residue (mod cofactor).
    let pk_inv = mod_inverse(pk % cofactor, cofactor);
    let delta = (1 + cofactor as i128 - (residue % cofactor) as i128) as u64 % cofactor;
    let t = mul_mod(pk_inv, delta, cofactor);
    (residue + pk * t) % q
}

/// Inverse of `a` mod `m` (requires gcd(a, m) = 1).
pub fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    assert!(old_r == 1, "mod_inverse: gcd({a}, {m}) = {old_r} ≠ 1");
    old_s.rem_euclid(m as i128) as u64
}
