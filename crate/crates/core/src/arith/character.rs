//! Dirichlet characters as exact exponent vectors on unit-group generators.
//!
//! A character mod `q` is stored as one exponent `c_i ∈ [0, d_i)` per cyclic
//! factor `⟨g_i⟩` (order `d_i`) of `(ℤ/qℤ)×`, defining `χ(g_i) = e(c_i/d_i)`.
//! All character values are then exact roots of unity: evaluation goes
//! through a discrete-log table and a shared table of `λ`-th roots of unity
//! (`λ` = exponent of the unit group), so no floating-point character
//! arithmetic ever accumulates error beyond one complex multiplication.

use std::sync::Arc;

use num_complex::Complex64;
use num_integer::{gcd, lcm};

use super::factor::{divisors, euler_phi, factorize};
use super::unit_group::{unit_group_structure, UnitGenerator};
use crate::error::{Error, Result};

/// Which part of the modulus a generator belongs to (drives the local
/// conductor formula).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GeneratorKind {
    /// Primitive root of an odd prime power `p^e`.
    OddPrimePower { p: u64, e: u32 },
    /// The generator `3` of `(ℤ/4ℤ)×`.
    Four,
    /// The `⟨−1⟩` factor of `(ℤ/2^eℤ)×`, `e ≥ 3`.
    MinusOne,
    /// The `⟨5⟩` factor of `(ℤ/2^eℤ)×`, `e ≥ 3`.
    Five { e: u32 },
}

/// Per-modulus character infrastructure: unit-group generators, a discrete
/// log table, and the roots of unity every character value is drawn from.
///
/// Construction is `O(q · r)`; intended for `q` up to about `10^6`.
#[derive(Debug)]
pub struct CharacterTable {
    q: u64,
    generators: Vec<UnitGenerator>,
    kinds: Vec<GeneratorKind>,
    phi: u64,
    /// Exponent of the unit group: lcm of generator orders.
    lambda: u64,
    /// Mixed-radix rank of the exponent tuple of each unit residue;
    /// `u32::MAX` marks non-units. Length `q` (`q = 1` has the single entry 0).
    dlog_rank: Vec<u32>,
    /// `roots[k] = e(k/λ)`.
    roots: Vec<Complex64>,
}

impl CharacterTable {
    /// Builds the table for modulus `q ≥ 1`.
    pub fn new(q: u64) -> Arc<Self> {
        assert!(q >= 1, "modulus must be positive");
        let generators = unit_group_structure(q);
        let kinds = generator_kinds(q, &generators);
        let phi = euler_phi(q);
        let lambda = generators.iter().fold(1u64, |l, g| lcm(l, g.order));
        assert!(phi < u32::MAX as u64, "modulus too large for rank table");

        // Discrete-log table: walk all exponent tuples in mixed-radix order
        // (first generator most significant), maintaining the product.
        let mut dlog_rank = vec![u32::MAX; q.max(1) as usize];
        let radices: Vec<u64> = generators.iter().map(|g| g.order).collect();
        let mut exps = vec![0u64; generators.len()];
        let mut value: u64 = 1 % q;
        for rank in 0..phi {
            dlog_rank[value as usize] = rank as u32;
            // Odometer increment (last digit fastest), updating the product.
            let mut i = generators.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < radices[i] {
                    value = super::factor::mul_mod(value, generators[i].generator, q);
                    break;
                }
                // Carry: digit wraps d_i → 0, i.e. multiply by g_i^{-(d_i-1)} = g_i.
                exps[i] = 0;
                value = super::factor::mul_mod(value, generators[i].generator, q);
            }
        }
        if q == 1 {
            dlog_rank[0] = 0;
        }

        // Quarter-turn values are snapped exact and the upper half mirrors
        // the lower by conjugation, so χ̄(n) == conj(χ(n)) bit-for-bit and
        // real characters take exactly ±1.
        let mut roots = vec![Complex64::new(0.0, 0.0); lambda as usize];
        for k in 0..=lambda / 2 {
            let v = if (4 * k) % lambda == 0 {
                match (4 * k / lambda) % 4 {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (lambda as f64);
                Complex64::new(theta.cos(), theta.sin())
            };
            roots[k as usize] = v;
            if k != 0 && k != lambda - k {
                roots[(lambda - k) as usize] = v.conj();
            }
        }

        Arc::new(CharacterTable {
            q,
            generators,
            kinds,
            phi,
            lambda,
            dlog_rank,
            roots,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn generators(&self) -> &[UnitGenerator] {
        &self.generators
    }

    /// Mixed-radix rank of the exponent tuple of `a`, or `None` if `gcd(a,q) > 1`.
    fn rank_of(&self, a: u64) -> Option<u32> {
        let r = self.dlog_rank[(a % self.q.max(1)) as usize];
        (r != u32::MAX).then_some(r)
    }

    /// Decodes a mixed-radix rank into an exponent tuple.
    fn decode_rank(&self, rank: u32) -> Vec<u64> {
        let mut rank = rank as u64;
        let mut out = vec![0u64; self.generators.len()];
        for i in (0..self.generators.len()).rev() {
            let d = self.generators[i].order;
            out[i] = rank % d;
            rank /= d;
        }
        out
    }

    fn index_of_exps(&self, exps: &[u64]) -> u64 {
        let mut idx = 0u64;
        for (i, g) in self.generators.iter().enumerate() {
            idx = idx * g.order + exps[i] % g.order;
        }
        idx
    }

    /// The character with the given index in `[0, φ(q))`; index 0 is principal.
    pub fn character(self: &Arc<Self>, index: u64) -> Result<DirichletCharacter> {
        if index >= self.phi {
            return Err(Error::NoSuchCharacter {
                modulus: self.q,
                index: index as usize,
            });
        }
        let exps = self.decode_rank(index as u32);
        Ok(DirichletCharacter::from_exps(self.clone(), exps))
    }

    /// All φ(q) characters, in index order (principal first).
    pub fn enumerate(self: &Arc<Self>) -> Vec<DirichletCharacter> {
        (0..self.phi)
            .map(|i| self.character(i).expect("index in range"))
            .collect()
    }
}

fn generator_kinds(q: u64, gens: &[UnitGenerator]) -> Vec<GeneratorKind> {
    let mut kinds = Vec::with_capacity(gens.len());
    for (p, e) in factorize(q) {
        if p == 2 {
            match e {
                1 => {}
                2 => kinds.push(GeneratorKind::Four),
                _ => {
                    kinds.push(GeneratorKind::MinusOne);
                    kinds.push(GeneratorKind::Five { e });
                }
            }
        } else {
            kinds.push(GeneratorKind::OddPrimePower { p, e });
        }
    }
    assert_eq!(kinds.len(), gens.len());
    kinds
}

/// A Dirichlet character mod `q`, exact and immutable.
#[derive(Clone)]
pub struct DirichletCharacter {
    table: Arc<CharacterTable>,
    index: u64,
    exps: Vec<u64>,
    /// `c_i · (λ/d_i) mod λ`: the phase contribution of one unit of exponent i.
    phase_mult: Vec<u64>,
    parity_a: u8,
    conductor: u64,
    primitive: bool,
    real: bool,
    order: u64,
}

impl std::fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", &self.table.q)
            .field("index", &self.index)
            .field("exps", &self.exps)
            .field("conductor", &self.conductor)
            .field("parity_a", &self.parity_a)
            .field("real", &self.real)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.table.q == other.table.q && self.index == other.index
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    fn from_exps(table: Arc<CharacterTable>, exps: Vec<u64>) -> Self {
        let index = table.index_of_exps(&exps);
        let lambda = table.lambda;
        let phase_mult: Vec<u64> = exps
            .iter()
            .zip(&table.generators)
            .map(|(&c, g)| (c % g.order) * (lambda / g.order) % lambda)
            .collect();
        let order = exps
            .iter()
            .zip(&table.generators)
            .fold(1u64, |o, (&c, g)| lcm(o, g.order / gcd(c, g.order)));
        let real = order <= 2;
        let conductor = conductor_from_exps(&table, &exps);
        let primitive = conductor == table.q;

        let mut chi = DirichletCharacter {
            parity_a: 0,
            table,
            index,
            exps,
            phase_mult,
            conductor,
            primitive,
            real,
            order,
        };
        // χ(−1) = ±1 decides the parity exponent 𝔞 = (1 − χ(−1))/2.
        let at_minus_one = chi.eval_int(-1);
        chi.parity_a = if at_minus_one.re > 0.0 { 0 } else { 1 };
        chi
    }

    pub fn modulus(&self) -> u64 {
        self.table.q
    }

    /// Index in the canonical enumeration mod q (0 = principal).
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Exponents on the table's generators.
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// `𝔞 = (1 − χ(−1))/2 ∈ {0, 1}`: 0 for even characters, 1 for odd.
    pub fn parity_a(&self) -> u8 {
        self.parity_a
    }

    pub fn is_even(&self) -> bool {
        self.parity_a == 0
    }

    /// Smallest modulus the character factors through.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Whether all values are real (χ² principal).
    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Multiplicative order of χ in the character group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The conjugate character χ̄ (exponents negated).
    pub fn conjugate(&self) -> DirichletCharacter {
        let exps: Vec<u64> = self
            .exps
            .iter()
            .zip(self.table.generators.iter())
            .map(|(&c, g)| (g.order - c) % g.order)
            .collect();
        DirichletCharacter::from_exps(self.table.clone(), exps)
    }

    /// Exact phase of χ(n) as a reduced fraction `num/den` of a full turn,
    /// or `None` when `gcd(n, q) > 1` (value 0).
    pub fn phase(&self, n: u64) -> Option<(u64, u64)> {
        let rank = self.table.rank_of(n)?;
        let exps_n = self.table.decode_rank(rank);
        let lambda = self.table.lambda;
        let mut num = 0u64;
        for (m, e) in self.phase_mult.iter().zip(exps_n) {
            num = (num + (m % lambda).wrapping_mul(e % lambda) % lambda) % lambda;
        }
        let g = gcd(num, lambda);
        if num == 0 {
            Some((0, 1))
        } else {
            Some((num / g, lambda / g))
        }
    }

    /// χ(n) for `n ≥ 0`.
    pub fn eval(&self, n: u64) -> Complex64 {
        match self.table.rank_of(n) {
            None => Complex64::new(0.0, 0.0),
            Some(rank) => {
                let exps_n = self.table.decode_rank(rank);
                let lambda = self.table.lambda;
                let mut num = 0u64;
                for (m, e) in self.phase_mult.iter().zip(exps_n) {
                    num = (num + m * e % lambda) % lambda;
                }
                self.table.roots[num as usize]
            }
        }
    }

    /// χ(n) for any integer (reduced mod q first).
    pub fn eval_int(&self, n: i64) -> Complex64 {
        let q = self.table.q as i64;
        self.eval(n.rem_euclid(q.max(1)) as u64)
    }

    /// Dense value vector `v[a] = χ(a)` for `a = 0..q−1`.
    pub fn value_vector(&self) -> Vec<Complex64> {
        (0..self.table.q).map(|a| self.eval(a)).collect()
    }

    /// The primitive character mod `conductor(χ)` that induces χ.
    ///
    /// Found by matching values on residues coprime to q — at most φ(f)
    /// candidates, each checked against the full unit range of q.
    pub fn primitive_core(&self) -> Result<DirichletCharacter> {
        if self.primitive {
            return Ok(self.clone());
        }
        let f = self.conductor;
        let core_table = CharacterTable::new(f);
        'cand: for psi in core_table.enumerate() {
            if psi.conductor() != f {
                continue;
            }
            for a in 1..=self.table.q {
                if gcd(a, self.table.q) != 1 {
                    continue;
                }
                if (psi.eval(a % f.max(1)) - self.eval(a)).norm() > 1e-9 {
                    continue 'cand;
                }
            }
            return Ok(psi);
        }
        unreachable!("every character is induced by a primitive one mod its conductor")
    }
}

/// Conductor from local exponents: product over prime-power components of
/// the local conductor of χ restricted there.
fn conductor_from_exps(table: &CharacterTable, exps: &[u64]) -> u64 {
    let mut cond = 1u64;
    let mut i = 0usize;
    while i < table.generators.len() {
        match table.kinds[i] {
            GeneratorKind::OddPrimePower { p, e: _ } => {
                let d = table.generators[i].order;
                let c = exps[i] % d;
                let m = d / gcd(c, d); // order of the local character
                if m > 1 {
                    let alpha = factorize(m)
                        .into_iter()
                        .find(|&(pp, _)| pp == p)
                        .map(|(_, a)| a)
                        .unwrap_or(0);
                    cond *= p.pow(alpha + 1);
                }
                i += 1;
            }
            GeneratorKind::Four => {
                if exps[i] % 2 == 1 {
                    cond *= 4;
                }
                i += 1;
            }
            GeneratorKind::MinusOne => {
                // Paired with the following Five generator.
                let c_minus = exps[i] % 2;
                let (c_five, d_five) = match table.kinds[i + 1] {
                    GeneratorKind::Five { .. } => {
                        (exps[i + 1] % table.generators[i + 1].order, table.generators[i + 1].order)
                    }
                    _ => unreachable!("MinusOne is always followed by Five"),
                };
                let m2 = d_five / gcd(c_five, d_five); // a power of two
                if m2 > 1 {
                    cond *= 4 * m2; // 2^{v₂(m2)+2}
                } else if c_minus == 1 {
                    cond *= 4;
                }
                i += 2;
            }
            GeneratorKind::Five { .. } => unreachable!("consumed by MinusOne arm"),
        }
    }
    cond
}

/// Number of primitive characters mod q: `Σ_{d|q} μ(q/d) φ(d)`.
pub fn primitive_character_count(q: u64) -> u64 {
    let mobius = |n: u64| -> i64 {
        let f = factorize(n);
        if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    };
    divisors(q)
        .into_iter()
        .map(|d| mobius(q / d) * euler_phi(d) as i64)
        .sum::<i64>()
        .max(0) as u64
}
