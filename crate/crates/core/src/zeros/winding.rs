//! Argument-principle counting: the winding number of `L(·, χ)` around a
//! rectangle, from adaptively refined phase increments.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use super::Rect;
use crate::arith::DirichletCharacter;
use crate::error::{Error, Result};
use crate::lfunc::LEvaluator;

/// Tunables of the boundary walk. The defaults satisfy the desk-scale
/// contract; halving `base_step` must not change any count (and the
/// acceptance suite checks exactly that).
#[derive(Debug, Clone, Copy)]
pub struct WindingConfig {
    /// Initial sample spacing along an edge.
    pub base_step: f64,
    /// `|L|` below which the contour is declared too close to a zero.
    pub near_zero_abs: f64,
    /// Bisection depth limit for one initial segment.
    pub max_depth: u32,
}

impl Default for WindingConfig {
    fn default() -> Self {
        WindingConfig {
            base_step: 0.25,
            near_zero_abs: 1e-10,
            max_depth: 40,
        }
    }
}

/// Phase oracle for one character: `arg L(s, χ)` plus the near-zero guard.
pub(crate) struct PhaseProbe {
    evaluator: LEvaluator,
    chi: DirichletCharacter,
    cfg: WindingConfig,
}

impl PhaseProbe {
    pub(crate) fn new(chi: &DirichletCharacter, cfg: WindingConfig) -> Self {
        PhaseProbe {
            evaluator: LEvaluator::new(chi.table().clone()),
            chi: chi.clone(),
            cfg,
        }
    }

    pub(crate) fn value(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.evaluator.evaluate(s, &self.chi)?.value)
    }

    fn phase(&self, s: Complex64) -> Result<f64> {
        let v = self.value(s)?;
        let abs = v.norm();
        if abs < self.cfg.near_zero_abs {
            return Err(Error::ContourNearZero {
                near_t: s.im,
                min_abs: abs,
            });
        }
        Ok(v.arg())
    }

    /// Total change of `arg L` along the segment `z0 → z1`, built from
    /// wrapped increments each below π/2 (refined by bisection).
    pub(crate) fn edge_change(&self, z0: Complex64, z1: Complex64) -> Result<f64> {
        let len = (z1 - z0).norm();
        if len == 0.0 {
            return Ok(0.0);
        }
        let n = (len / self.cfg.base_step).ceil().max(1.0) as usize;
        let mut total = 0.0;
        let mut prev_z = z0;
        let mut prev_p = self.phase(z0)?;
        for i in 1..=n {
            let z = z0 + (z1 - z0) * (i as f64 / n as f64);
            let p = self.phase(z)?;
            total += self.refine(prev_z, z, prev_p, p, 0)?;
            prev_z = z;
            prev_p = p;
        }
        Ok(total)
    }

    fn refine(&self, z0: Complex64, z1: Complex64, p0: f64, p1: f64, depth: u32) -> Result<f64> {
        let d = wrap(p1 - p0);
        if d.abs() <= FRAC_PI_2 {
            return Ok(d);
        }
        if depth >= self.cfg.max_depth {
            return Err(Error::NoConvergence {
                iterations: depth as usize,
                context: format!(
                    "phase increment stayed above π/2 after {depth} bisections near t = {}",
                    0.5 * (z0.im + z1.im)
                ),
            });
        }
        let zm = 0.5 * (z0 + z1);
        let pm = self.phase(zm)?;
        Ok(self.refine(z0, zm, p0, pm, depth + 1)? + self.refine(zm, z1, pm, p1, depth + 1)?)
    }

    /// Winding number of `L` around `rect`, counterclockwise.
    pub(crate) fn wind_rect(&self, rect: &Rect) -> Result<usize> {
        if rect.is_degenerate() {
            return Ok(0);
        }
        let c = |sigma: f64, t: f64| Complex64::new(sigma, t);
        let (sl, sh, tl, th) = (rect.sigma_lo, rect.sigma_hi, rect.t_lo, rect.t_hi);
        let total = self.edge_change(c(sl, tl), c(sh, tl))?
            + self.edge_change(c(sh, tl), c(sh, th))?
            + self.edge_change(c(sh, th), c(sl, th))?
            + self.edge_change(c(sl, th), c(sl, tl))?;
        let turns = total / TAU;
        let rounded = turns.round();
        if (turns - rounded).abs() > 0.25 {
            return Err(Error::NoConvergence {
                iterations: 0,
                context: format!("winding number {turns:.4} is not close to an integer"),
            });
        }
        if rounded < 0.0 {
            return Err(Error::SelfCheckFailed {
                residual: -rounded,
                context: "negative winding number for a zero-free-pole function".into(),
            });
        }
        Ok(rounded as usize)
    }
}

/// Wraps an angle difference into (−π, π].
fn wrap(x: f64) -> f64 {
    let y = x - TAU * (x / TAU).round();
    if y <= -std::f64::consts::PI {
        y + TAU
    } else {
        y
    }
}

/// Number of zeros of `L(s, χ)` strictly inside `rect`, by the argument
/// principle along the boundary.
///
/// Errors with [`Error::ContourNearZero`] when the boundary runs through (or
/// numerically touches) a zero; the caller may perturb the rectangle and
/// retry (see [`count_zeros_rect_retrying`]). Note the count is of zeros of
/// `L` itself — a rectangle reaching σ ≤ 0 picks up trivial or induced-factor
/// zeros on the boundary lines; the strip-interior rectangles used by this
/// crate never do.
pub fn count_zeros_rect(chi: &DirichletCharacter, rect: &Rect) -> Result<usize> {
    count_zeros_rect_with(chi, rect, WindingConfig::default())
}

/// [`count_zeros_rect`] with explicit walk tunables.
pub fn count_zeros_rect_with(
    chi: &DirichletCharacter,
    rect: &Rect,
    cfg: WindingConfig,
) -> Result<usize> {
    PhaseProbe::new(chi, cfg).wind_rect(rect)
}

/// Retry wrapper implementing the standard policy: on a contour failure,
/// translate the rectangle by `1e−4·k` (diagonally) for `k = 1..=5`.
pub(crate) fn count_with_retry(probe: &PhaseProbe, rect: &Rect) -> Result<usize> {
    let mut last_err = None;
    for k in 0..=5u32 {
        let delta = 1e-4 * k as f64;
        let candidate = rect.translate(delta, delta);
        match probe.wind_rect(&candidate) {
            Ok(n) => return Ok(n),
            Err(e @ (Error::ContourNearZero { .. } | Error::NoConvergence { .. })) => {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt ran"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::quadratic_character;

    const GAMMA_1: f64 = 6.020948904697597; // lowest zero of L(s, χ₋₄)

    #[test]
    fn wrap_is_principal() {
        assert!((wrap(0.3) - 0.3).abs() < 1e-15);
        assert!((wrap(3.0 * std::f64::consts::PI) - std::f64::consts::PI).abs() < 1e-12);
        assert!((wrap(-7.0) - (-7.0 + TAU)).abs() < 1e-15);
    }

    #[test]
    fn counts_first_zeros_of_chi_minus_4() {
        let chi = quadratic_character(-4).unwrap();
        let r1 = Rect::new(0.001, 0.999, 0.0, 10.0).unwrap();
        assert_eq!(count_zeros_rect(&chi, &r1).unwrap(), 1);
        let r2 = Rect::new(0.001, 0.999, 0.0, 12.0).unwrap();
        assert_eq!(count_zeros_rect(&chi, &r2).unwrap(), 2);
        let below = Rect::new(0.001, 0.999, -12.0, 0.0).unwrap();
        assert_eq!(count_zeros_rect(&chi, &below).unwrap(), 2);
    }

    #[test]
    fn no_zeros_beyond_sigma_1() {
        let chi = quadratic_character(-4).unwrap();
        let r = Rect::new(1.05, 1.45, 0.0, 10.0).unwrap();
        assert_eq!(count_zeros_rect(&chi, &r).unwrap(), 0);
    }

    #[test]
    fn empty_rect_counts_zero() {
        let chi = quadratic_character(-4).unwrap();
        let r = Rect::new(0.1, 0.9, 5.0, 5.0).unwrap();
        assert_eq!(count_zeros_rect(&chi, &r).unwrap(), 0);
    }

    #[test]
    fn two_subdivision_depths_agree() {
        let chi = quadratic_character(-4).unwrap();
        let fine = WindingConfig {
            base_step: 0.125,
            ..WindingConfig::default()
        };
        for t_hi in [10.0, 19.0, 25.0] {
            let r = Rect::new(0.001, 0.999, 0.0, t_hi).unwrap();
            assert_eq!(
                count_zeros_rect(&chi, &r).unwrap(),
                count_zeros_rect_with(&chi, &r, fine).unwrap(),
                "depth disagreement at t_hi = {t_hi}"
            );
        }
    }

    #[test]
    fn boundary_through_zero_is_detected_and_retried() {
        let chi = quadratic_character(-4).unwrap();
        let r = Rect::new(0.001, 0.999, 0.0, GAMMA_1).unwrap();
        match count_zeros_rect(&chi, &r) {
            Err(Error::ContourNearZero { near_t, .. }) => {
                assert!((near_t - GAMMA_1).abs() < 1e-3);
            }
            other => panic!("expected ContourNearZero, got {other:?}"),
        }
        let probe = PhaseProbe::new(&chi, WindingConfig::default());
        let n = count_with_retry(&probe, &r).unwrap();
        assert_eq!(n, 1, "translated rectangle should capture the zero");
    }

    #[test]
    fn additive_over_vertical_split() {
        let chi = quadratic_character(5).unwrap();
        let whole = Rect::new(0.001, 0.999, 0.0, 18.0).unwrap();
        let lower = Rect::new(0.001, 0.999, 0.0, 9.2).unwrap();
        let upper = Rect::new(0.001, 0.999, 9.2, 18.0).unwrap();
        let (n, n1, n2) = (
            count_zeros_rect(&chi, &whole).unwrap(),
            count_zeros_rect(&chi, &lower).unwrap(),
            count_zeros_rect(&chi, &upper).unwrap(),
        );
        assert_eq!(n, n1 + n2);
        assert!(n > 0, "expected at least one zero below t = 18 for χ₅");
    }
}
