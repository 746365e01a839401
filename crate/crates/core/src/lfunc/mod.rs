//! Dirichlet L-functions and their logarithmic derivative near s = 1.
//!
//! Everything is driven by the finite Hurwitz decomposition
//!
//! ```text
//! L(s, χ) = q^{−s} ∑_{a=1}^{q} χ(a) ζ(s, a/q),
//! ```
//!
//! evaluated through the regularized pieces `ζ(s, a) = reg(s, a) + 1/(s−1)`:
//!
//! ```text
//! L(s, χ)  = q^{−s} ( ∑_a χ(a)·reg(s, a/q)   + S_χ/(s−1)   ),
//! L′(s, χ) = −log q · L(s, χ)
//!          + q^{−s} ( ∑_a χ(a)·reg_s(s, a/q) − S_χ/(s−1)² ),
//! ```
//!
//! where `S_χ = ∑_a χ(a)` is `φ(q)` for the principal character and `0`
//! otherwise. Non-principal characters therefore evaluate *exactly* at
//! `s = 1` — the pole terms cancel symbolically, not by a numerical limit —
//! giving `L(1, χ) = −(1/q) ∑_a χ(a) ψ(a/q)` and its derivative analogue.
//!
//! The completed function `Λ(s, χ) = (q/π)^{(s+𝔞)/2} Γ((s+𝔞)/2) L(s, χ)`
//! (with 𝔞 the parity of χ) satisfies `|Λ(s, χ)| = |Λ(1−s̄, χ)|` for
//! primitive χ since the root number has modulus one; the discrepancy between
//! the two sides is this module's built-in self-check.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{CharacterTable, DirichletCharacter};
use crate::error::{Error, Result};
use crate::special::{hurwitz_eval, ln_abs_gamma, EulerMaclaurinConfig, HurwitzEval};

/// Which backend produced an [`LEvaluation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMethod {
    /// Finite Hurwitz-zeta decomposition (works in the whole strip).
    Hurwitz,
    /// Direct Dirichlet series with tail bound (requires Re(s) > 1).
    DirectSeries,
}

/// One evaluation of `L(s, χ)` together with its derivative and an advisory
/// error estimate (the sum of the per-term Euler–Maclaurin bounds).
#[derive(Debug, Clone)]
pub struct LEvaluation {
    pub s: Complex64,
    pub modulus: u64,
    pub character_index: u64,
    pub value: Complex64,
    pub derivative: Option<Complex64>,
    pub method: EvalMethod,
    pub est_error: f64,
}

/// Shared evaluation bank for every character of a fixed modulus.
///
/// The expensive part of the decomposition — the `φ(q)` Hurwitz values at a
/// common point `s` — does not depend on χ, so evaluating the whole character
/// group at one `s` costs one bank plus `φ(q)²` multiplications.
pub struct LEvaluator {
    table: Arc<CharacterTable>,
    cfg: EulerMaclaurinConfig,
}

impl LEvaluator {
    pub fn new(table: Arc<CharacterTable>) -> Self {
        Self {
            table,
            cfg: EulerMaclaurinConfig::default(),
        }
    }

    pub fn with_config(table: Arc<CharacterTable>, cfg: EulerMaclaurinConfig) -> Self {
        Self { table, cfg }
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    /// Regularized Hurwitz values at `a/q` for every unit `a` mod q.
    fn bank(&self, s: Complex64) -> Result<Vec<(u64, HurwitzEval)>> {
        let q = self.table.modulus();
        let mut out = Vec::with_capacity(self.table.phi() as usize);
        for a in 1..=q {
            if num_integer::gcd(a, q) == 1 {
                out.push((a, hurwitz_eval(s, a as f64 / q as f64, &self.cfg)?));
            }
        }
        Ok(out)
    }

    /// `L(s, χ)` and `L′(s, χ)` for one character.
    pub fn evaluate(&self, s: Complex64, chi: &DirichletCharacter) -> Result<LEvaluation> {
        self.evaluate_with_bank(s, chi, &self.bank(s)?)
    }

    /// Evaluates the whole character group at `s`, sharing one Hurwitz bank.
    /// The principal character is skipped at `s = 1` (it has a pole there).
    pub fn evaluate_group(&self, s: Complex64) -> Result<Vec<LEvaluation>> {
        let bank = self.bank(s)?;
        let at_pole = (s - Complex64::ONE).norm() < POLE_RADIUS;
        self.table
            .enumerate()
            .iter()
            .filter(|chi| !(at_pole && chi.is_principal()))
            .map(|chi| self.evaluate_with_bank(s, chi, &bank))
            .collect()
    }

    fn evaluate_with_bank(
        &self,
        s: Complex64,
        chi: &DirichletCharacter,
        bank: &[(u64, HurwitzEval)],
    ) -> Result<LEvaluation> {
        let q = self.table.modulus();
        assert_eq!(chi.modulus(), q, "character belongs to a different modulus");

        let principal_mass = if chi.is_principal() {
            self.table.phi() as f64
        } else {
            0.0
        };
        let sm1 = s - Complex64::ONE;
        if principal_mass != 0.0 && sm1.norm() < POLE_RADIUS {
            return Err(Error::PoleEvaluation {
                context: format!("principal character mod {q} at s = {s}"),
            });
        }

        let mut sum = Complex64::ZERO;
        let mut sum_ds = Complex64::ZERO;
        let mut err = 0.0;
        for &(a, ref h) in bank {
            let cv = chi.eval(a);
            sum += cv * h.reg;
            sum_ds += cv * h.reg_ds;
            err += h.est_error;
        }
        if principal_mass != 0.0 {
            sum += principal_mass / sm1;
            sum_ds -= principal_mass / (sm1 * sm1);
        }

        let qf = q as f64;
        let log_q = qf.ln();
        let scale = (-s * log_q).exp();
        let value = scale * sum;
        let derivative = -log_q * value + scale * sum_ds;
        let est_error = scale.norm() * err;

        Ok(LEvaluation {
            s,
            modulus: q,
            character_index: chi.index(),
            value,
            derivative: Some(derivative),
            method: EvalMethod::Hurwitz,
            est_error,
        })
    }
}

/// Points within this distance of `s = 1` count as "at the pole" for
/// principal characters.
const POLE_RADIUS: f64 = 1e-12;

/// `L(s, χ)` by the Hurwitz decomposition.
pub fn l_value(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    Ok(LEvaluator::new(chi.table().clone()).evaluate(s, chi)?.value)
}

/// `L′(s, χ)` by the Hurwitz decomposition.
pub fn l_prime(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    let eval = LEvaluator::new(chi.table().clone()).evaluate(s, chi)?;
    Ok(eval.derivative.expect("hurwitz path always carries the derivative"))
}

/// `L′(1, χ)/L(1, χ)` for non-principal χ.
///
/// `L(1, χ) ≠ 0` is a theorem; a near-zero denominator here means the
/// evaluation itself broke, and is reported as such rather than divided by.
pub fn log_deriv_at_1(chi: &DirichletCharacter) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter {
            modulus: chi.modulus(),
        });
    }
    let eval = LEvaluator::new(chi.table().clone()).evaluate(Complex64::ONE, chi)?;
    let l = eval.value;
    if l.norm() < 1e-12 {
        return Err(Error::NearZeroDenominator {
            value: l.norm(),
            context: format!(
                "L(1, χ) for modulus {} index {} — evaluation bug, L(1, χ) ≠ 0",
                chi.modulus(),
                chi.index()
            ),
        });
    }
    Ok(eval.derivative.expect("hurwitz path always carries the derivative") / l)
}

/// Partial Dirichlet series `∑_{n≤N} χ(n) n^{−s}` with a crude tail bound
/// `q/( (σ−1) N^{σ−1} )`; only meaningful for `Re(s) > 1`.
pub fn dirichlet_series(s: Complex64, chi: &DirichletCharacter, terms: usize) -> Result<LEvaluation> {
    if s.re <= 1.0 {
        return Err(Error::domain(format!(
            "direct Dirichlet series diverges at Re(s) = {} ≤ 1",
            s.re
        )));
    }
    let mut value = Complex64::ZERO;
    let mut derivative = Complex64::ZERO;
    for n in 1..=terms as u64 {
        let cv = chi.eval(n);
        if cv == Complex64::ZERO {
            continue;
        }
        let ln_n = (n as f64).ln();
        let term = cv * (-s * ln_n).exp();
        value += term;
        derivative -= term * ln_n;
    }
    let sigma = s.re;
    let tail = (terms as f64).powf(1.0 - sigma) / (sigma - 1.0) * chi.modulus() as f64;
    Ok(LEvaluation {
        s,
        modulus: chi.modulus(),
        character_index: chi.index(),
        value,
        derivative: Some(derivative),
        method: EvalMethod::DirectSeries,
        est_error: tail,
    })
}

/// `|Λ(s, χ)|` for primitive non-principal χ, where
/// `Λ(s, χ) = (q/π)^{(s+𝔞)/2} Γ((s+𝔞)/2) L(s, χ)`.
pub fn completed_l_abs(s: Complex64, chi: &DirichletCharacter) -> Result<f64> {
    require_primitive(chi)?;
    let l = l_value(s, chi)?;
    if l == Complex64::ZERO {
        return Ok(0.0);
    }
    let half = (s + chi.parity_a() as f64) / 2.0;
    let q_over_pi = chi.modulus() as f64 / std::f64::consts::PI;
    let ln_abs = (half * q_over_pi.ln()).re + ln_abs_gamma(half) + l.norm().ln();
    Ok(ln_abs.exp())
}

/// Relative defect of `|Λ(s, χ)| = |Λ(1−s̄, χ)|`:
/// `| |Λ(s)| − |Λ(1−s̄)| | / (1 + |Λ(s)|)`.
///
/// A defect above `1e−3` is impossible mathematically (the root number is
/// unimodular), so it is raised as an evaluation bug instead of returned.
pub fn functional_eq_residual(s: Complex64, chi: &DirichletCharacter) -> Result<f64> {
    require_primitive(chi)?;
    let here = completed_l_abs(s, chi)?;
    let reflected = completed_l_abs(Complex64::ONE - s.conj(), chi)?;
    let residual = (here - reflected).abs() / (1.0 + here);
    if residual > 1e-3 {
        return Err(Error::SelfCheckFailed {
            residual,
            context: format!(
                "functional equation at s = {s} for modulus {} index {}",
                chi.modulus(),
                chi.index()
            ),
        });
    }
    Ok(residual)
}

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter {
            modulus: chi.modulus(),
        });
    }
    if !chi.is_primitive() {
        return Err(Error::domain(format!(
            "character mod {} index {} is imprimitive (conductor {})",
            chi.modulus(),
            chi.index(),
            chi.conductor()
        )));
    }
    Ok(())
}
