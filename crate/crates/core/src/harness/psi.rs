//! The twisted Chebyshev function `ψ(x, χ) = ∑_{n≤x} Λ(n) χ(n)`, its
//! zero-side explicit formula `−∑_{|γ|<T} x^ϱ/ϱ`, and the elementary
//! `∑_{n≤y} Λ(n) ≤ 4y` bound.

use num_complex::Complex64;

use crate::arith::DirichletCharacter;
use crate::error::{Error, Result};
use crate::harness::{scalar_map, ReportMeta, VerificationReport};
use crate::special::MangoldtSieve;
use crate::zeros::ZeroSet;

/// `ψ(x, χ) = ∑_{n ≤ x} Λ(n) χ(n)` by direct sieve summation. Real for real
/// χ; complex in general.
pub fn psi_direct(x: f64, chi: &DirichletCharacter, sieve: &MangoldtSieve) -> Result<Complex64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!("ψ(x,χ) needs finite x ≥ 0, got {x}")));
    }
    let top = x.floor() as u64;
    if top as usize > sieve.limit() {
        return Err(Error::invalid(format!(
            "sieve covers n ≤ {}, ψ needs n ≤ {top}",
            sieve.limit()
        )));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 2..=top {
        let lambda = sieve.von_mangoldt(n);
        if lambda != 0.0 {
            sum += lambda * chi.eval(n);
        }
    }
    Ok(sum)
}

/// The zero side of the explicit formula: `−∑_{|γ| < T} x^ϱ/ϱ` over the
/// located zeros (the trivial-zero and principal-part terms live in the
/// comparison's error budget, matching the formula's `O(x^{1/2} log(qx)²)`).
pub fn psi_from_zeros(
    x: f64,
    chi: &DirichletCharacter,
    t_max: f64,
    set: &ZeroSet,
) -> Result<Complex64> {
    if set.modulus != chi.modulus() || set.character_index != chi.index() {
        return Err(Error::invalid(format!(
            "zero set belongs to modulus {} index {}, not modulus {} index {}",
            set.modulus,
            set.character_index,
            chi.modulus(),
            chi.index()
        )));
    }
    if !(x > 1.0) {
        return Err(Error::invalid(format!("explicit formula needs x > 1, got {x}")));
    }
    if t_max > set.height_t {
        return Err(Error::invalid(format!(
            "zero set reaches height {}, explicit formula asked for T = {t_max}",
            set.height_t
        )));
    }
    let log_x = x.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for z in set.below(t_max) {
        let rho = Complex64::new(z.beta, z.gamma);
        sum += (rho * log_x).exp() / rho;
    }
    Ok(-sum)
}

/// Compares the two sides of the explicit formula against the error budget
/// `C·x^{1/2}·log(qx)²`. `t_max = None` uses the native cutoff
/// `min(√x, 50)`.
pub fn psi_residual(
    x: f64,
    chi: &DirichletCharacter,
    t_max: Option<f64>,
    c: f64,
    set: &ZeroSet,
    sieve: &MangoldtSieve,
) -> Result<VerificationReport> {
    if !(c > 0.0) {
        return Err(Error::invalid(format!("error-budget constant must be positive, got {c}")));
    }
    let t_max = t_max.unwrap_or_else(|| x.sqrt().min(50.0));
    let direct = psi_direct(x, chi, sieve)?;
    let from_zeros = psi_from_zeros(x, chi, t_max, set)?;
    let residual = (direct - from_zeros).norm();
    let q = chi.modulus() as f64;
    let tolerance = c * x.sqrt() * (q * x).ln().powi(2);
    Ok(VerificationReport::new(
        format!("psi/q={}/idx={}/x={x}/T={t_max}", chi.modulus(), chi.index()),
        scalar_map([
            ("q", q),
            ("index", chi.index() as f64),
            ("x", x),
            ("t_max", t_max),
            ("c", c),
        ]),
        scalar_map([
            ("direct_re", direct.re),
            ("direct_im", direct.im),
            ("zeros_re", from_zeros.re),
            ("zeros_im", from_zeros.im),
            ("zero_count", set.below(t_max).count() as f64),
        ]),
        residual,
        tolerance,
        ReportMeta {
            t: Some(t_max),
            ..ReportMeta::default()
        },
    ))
}

/// The elementary Chebyshev bound `∑_{n≤y} Λ(n) ≤ 4y`, checked at every
/// integer up to `y`. The residual is the worst excess over `4n` (0 when
/// the bound holds throughout).
pub fn chebyshev_bound(y: u64) -> VerificationReport {
    let sieve = MangoldtSieve::new(y as usize);
    let mut psi = 0.0;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut max_ratio: f64 = 0.0;
    let mut argmax = 0u64;
    for n in 1..=y {
        if n >= 2 {
            psi += sieve.von_mangoldt(n);
        }
        let excess = psi - 4.0 * n as f64;
        if excess > worst_excess {
            worst_excess = excess;
            argmax = n;
        }
        if n >= 2 {
            max_ratio = max_ratio.max(psi / n as f64);
        }
    }
    VerificationReport::new(
        format!("chebyshev/y={y}"),
        scalar_map([("y", y as f64)]),
        scalar_map([
            ("psi_y", psi),
            ("max_psi_over_n", max_ratio),
            ("worst_n", argmax as f64),
        ]),
        worst_excess.max(0.0),
        0.0,
        ReportMeta::default(),
    )
}
