//! Fundamental discriminants and their quadratic characters `χ_D = (D|·)`.

use super::character::{CharacterTable, DirichletCharacter};
use super::factor::factorize;
use super::kronecker::kronecker;
use crate::error::{Error, Result};

/// Whether `D` is a fundamental discriminant: `D ≡ 1 (mod 4)` squarefree, or
/// `D = 4m` with `m` squarefree and `m ≡ 2, 3 (mod 4)`. `D ∈ {0, 1}` are
/// excluded (the trivial case carries no primitive character mod |D| ≥ 3).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |n: i64| -> bool {
        factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
    };
    if d.rem_euclid(4) == 1 {
        return squarefree(d);
    }
    if d % 4 == 0 {
        let m = d / 4;
        let mm = m.rem_euclid(4);
        return (mm == 2 || mm == 3) && squarefree(m);
    }
    false
}

/// All fundamental discriminants in `[lo, hi]`, ascending.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&d| is_fundamental_discriminant(d)).collect()
}

/// The quadratic character `χ_D (mod |D|)` attached to a fundamental
/// discriminant: the unique real primitive character with `χ_D(n) = (D|n)`.
pub fn quadratic_character(d: i64) -> Result<DirichletCharacter> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental { d });
    }
    let q = d.unsigned_abs();
    let table = CharacterTable::new(q);
    let candidates: Vec<DirichletCharacter> = table
        .enumerate()
        .into_iter()
        .filter(|c| c.is_real() && c.is_primitive())
        .collect();
    'cand: for chi in candidates {
        for n in 1..=q.min(2 * q) {
            let kr = kronecker(d, n as i64) as f64;
            if (chi.eval(n).re - kr).abs() > 1e-9 || chi.eval(n).im.abs() > 1e-12 {
                continue 'cand;
            }
        }
        return Ok(chi);
    }
    unreachable!("(D|·) for fundamental D is a real primitive character mod |D|")
}
