//! Zero localization: rectangle subdivision to isolate single zeros, Newton
//! refinement on `L/L′`, certification, and the real-axis scan.

use num_complex::Complex64;

use super::winding::{count_with_retry, PhaseProbe, WindingConfig};
use super::{Rect, Zero, ZeroSet, BUCKET_THRESHOLD};
use crate::arith::DirichletCharacter;
use crate::error::{Error, Result};
use crate::lfunc::{l_value, LEvaluator};

/// Search box keeps a hair clear of the strip edges so induced Euler-factor
/// zeros (σ = 0) and trivial zeros never sit inside or on the contour.
const SIGMA_LO: f64 = 1e-3;
const SIGMA_HI: f64 = 1.0 - 1e-3;

/// Below this box size, an unresolved multi-zero cluster stops subdividing
/// and is reported with `multiplicity_suspected`.
const MIN_BOX: f64 = 1e-4;

const NEWTON_MAX_ITERS: usize = 100;
const CERTIFY_RADIUS: f64 = 1e-6;

/// Locates every zero of `L(s, χ)` with `|γ| ≤ t_max` (strip interior),
/// refined by Newton to `tol` and certified by count-1 boxes.
///
/// The lower half-plane is filled in by symmetry: for real χ zeros come in
/// conjugate pairs; in general `ϱ` a zero of `L(s, χ̄)` makes `ϱ̄` a zero of
/// `L(s, χ)`, so negative-γ zeros of χ are the reflections of the located
/// upper zeros of χ̄. Real zeros (γ = 0) are out of scope here — see
/// [`largest_real_zero`].
pub fn locate_zeros(chi: &DirichletCharacter, t_max: f64, tol: f64) -> Result<ZeroSet> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter {
            modulus: chi.modulus(),
        });
    }
    if !(t_max > 0.0) || t_max > BUCKET_THRESHOLD {
        return Err(Error::invalid(format!(
            "localization height must lie in (0, {BUCKET_THRESHOLD}], got {t_max}"
        )));
    }
    if !(tol > 0.0) || tol > 1e-6 {
        return Err(Error::invalid(format!("tol must lie in (0, 1e−6], got {tol}")));
    }

    let cfg = WindingConfig::default();
    let probe = PhaseProbe::new(chi, cfg);
    let upper_rect = Rect::new(SIGMA_LO, SIGMA_HI, 0.0, t_max)?;

    let mut zeros = locate_upper(&probe, chi, &upper_rect, tol)?;

    // Mirror into the lower half-plane.
    if chi.is_real() {
        let mirrored: Vec<Zero> = zeros
            .iter()
            .filter(|z| z.gamma > 1e-8)
            .map(|z| Zero {
                beta: z.beta,
                gamma: -z.gamma,
                residual: z.residual,
                certified: z.certified,
            })
            .collect();
        zeros.extend(mirrored);
    } else {
        let conj = chi.conjugate();
        let conj_probe = PhaseProbe::new(&conj, cfg);
        let conj_upper = locate_upper(&conj_probe, &conj, &upper_rect, tol)?;
        zeros.extend(conj_upper.iter().filter(|z| z.gamma > 1e-8).map(|z| Zero {
            beta: z.beta,
            gamma: -z.gamma,
            residual: z.residual,
            certified: z.certified,
        }));
    }

    zeros.sort_by(|a, b| a.gamma.partial_cmp(&b.gamma).expect("finite γ"));

    let full_rect = Rect::new(SIGMA_LO, SIGMA_HI, -t_max, t_max)?;
    let count_by_argument = count_with_retry(&probe, &full_rect)?;
    let multiplicity_suspected = zeros.iter().any(|z| !z.certified && z.residual > 1e-8)
        || zeros.len() != count_by_argument;

    Ok(ZeroSet {
        modulus: chi.modulus(),
        character_index: chi.index(),
        exponents: chi.exponents().to_vec(),
        height_t: t_max,
        tol,
        zeros,
        count_by_argument,
        multiplicity_suspected,
    })
}

/// Subdivision over the upper half-box. Sequential recursion: rectangle
/// counts dominate the cost and are already fast at desk scale, and a fixed
/// traversal order keeps output deterministic trivially.
fn locate_upper(
    probe: &PhaseProbe,
    chi: &DirichletCharacter,
    rect: &Rect,
    tol: f64,
) -> Result<Vec<Zero>> {
    let n = count_with_retry(probe, rect)?;
    let mut out = Vec::with_capacity(n);
    subdivide(probe, chi, rect, n, tol, &mut out)?;
    Ok(out)
}

fn subdivide(
    probe: &PhaseProbe,
    chi: &DirichletCharacter,
    rect: &Rect,
    count: usize,
    tol: f64,
    out: &mut Vec<Zero>,
) -> Result<()> {
    match count {
        0 => Ok(()),
        1 => {
            out.push(refine_one(probe, chi, rect, tol)?);
            Ok(())
        }
        _ if rect.height() <= MIN_BOX && rect.width() <= MIN_BOX => {
            // Unresolvable cluster: report the center `count` times,
            // uncertified, and let the caller flag multiplicity.
            let center = rect.center();
            let residual = probe.value(center)?.norm();
            for _ in 0..count {
                out.push(Zero {
                    beta: center.re,
                    gamma: center.im,
                    residual,
                    certified: false,
                });
            }
            Ok(())
        }
        _ => {
            let split_t = rect.height() >= rect.width();
            let mid = if split_t {
                0.5 * (rect.t_lo + rect.t_hi)
            } else {
                0.5 * (rect.sigma_lo + rect.sigma_hi)
            };
            // A cut through (or too near) a zero miscounts; nudge it.
            for k in 0..=5u32 {
                let cut = mid + 1e-4 * k as f64;
                let (a, b) = if split_t {
                    (
                        Rect { t_hi: cut, ..*rect },
                        Rect { t_lo: cut, ..*rect },
                    )
                } else {
                    (
                        Rect {
                            sigma_hi: cut,
                            ..*rect
                        },
                        Rect {
                            sigma_lo: cut,
                            ..*rect
                        },
                    )
                };
                let (na, nb) = match (count_with_retry(probe, &a), count_with_retry(probe, &b)) {
                    (Ok(na), Ok(nb)) => (na, nb),
                    _ => continue,
                };
                if na + nb != count {
                    continue;
                }
                subdivide(probe, chi, &a, na, tol, out)?;
                subdivide(probe, chi, &b, nb, tol, out)?;
                return Ok(());
            }
            Err(Error::NoConvergence {
                iterations: 5,
                context: format!("no clean subdivision cut found inside {rect:?}"),
            })
        }
    }
}

/// Newton on a rectangle known to hold exactly one zero.
fn refine_one(
    probe: &PhaseProbe,
    chi: &DirichletCharacter,
    rect: &Rect,
    tol: f64,
) -> Result<Zero> {
    let mut box_now = *rect;
    loop {
        if let Some(zero) = newton_in_box(probe, chi, &box_now, tol)? {
            return Ok(zero);
        }
        // Newton failed from this seed: shrink the box around the zero and
        // try again from the new center.
        if box_now.height() <= MIN_BOX && box_now.width() <= MIN_BOX {
            let center = box_now.center();
            return Ok(Zero {
                beta: center.re,
                gamma: center.im,
                residual: probe.value(center)?.norm(),
                certified: false,
            });
        }
        let split_t = box_now.height() >= box_now.width();
        let mut found = None;
        for k in 0..=5u32 {
            let mid = if split_t {
                0.5 * (box_now.t_lo + box_now.t_hi)
            } else {
                0.5 * (box_now.sigma_lo + box_now.sigma_hi)
            } + 1e-4 * k as f64;
            let (a, b) = if split_t {
                (
                    Rect {
                        t_hi: mid,
                        ..box_now
                    },
                    Rect {
                        t_lo: mid,
                        ..box_now
                    },
                )
            } else {
                (
                    Rect {
                        sigma_hi: mid,
                        ..box_now
                    },
                    Rect {
                        sigma_lo: mid,
                        ..box_now
                    },
                )
            };
            match count_with_retry(probe, &a) {
                Ok(1) => {
                    found = Some(a);
                    break;
                }
                Ok(0) => {
                    found = Some(b);
                    break;
                }
                _ => continue,
            }
        }
        box_now = found.ok_or(Error::NoConvergence {
            iterations: 5,
            context: format!("could not shrink around the zero in {box_now:?}"),
        })?;
    }
}

/// One Newton run seeded at the box center; `None` when it leaves the
/// (inflated) box or exhausts its iteration budget.
fn newton_in_box(
    probe: &PhaseProbe,
    chi: &DirichletCharacter,
    rect: &Rect,
    tol: f64,
) -> Result<Option<Zero>> {
    let evaluator = LEvaluator::new(chi.table().clone());
    let margin = 0.5 * (rect.width() + rect.height()) + 0.05;
    let mut z = rect.center();
    for _ in 0..NEWTON_MAX_ITERS {
        let ev = evaluator.evaluate(z, chi)?;
        let d = ev.derivative.expect("hurwitz path carries the derivative");
        if d == Complex64::ZERO {
            return Ok(None);
        }
        let step = ev.value / d;
        z -= step;
        let escaped = z.re < rect.sigma_lo - margin
            || z.re > rect.sigma_hi + margin
            || z.im < rect.t_lo - margin
            || z.im > rect.t_hi + margin;
        if escaped {
            return Ok(None);
        }
        if step.norm() < tol {
            // Converging is not enough: within the wander margin Newton can
            // land on a zero *outside* this box (e.g. the trivial zero at
            // s = 0 just past the strip edge) and abandon the one counted
            // inside. Reject those; the caller shrinks the box and reseeds.
            let slack = 1e-6 + tol;
            let inside = z.re >= rect.sigma_lo - slack
                && z.re <= rect.sigma_hi + slack
                && z.im >= rect.t_lo - slack
                && z.im <= rect.t_hi + slack;
            if !inside {
                return Ok(None);
            }
            let residual = probe.value(z).map(|v| v.norm()).unwrap_or(0.0);
            let disk = Rect::new(
                (z.re - CERTIFY_RADIUS).max(-0.49),
                (z.re + CERTIFY_RADIUS).min(1.49),
                z.im - CERTIFY_RADIUS,
                z.im + CERTIFY_RADIUS,
            )?;
            let certified = matches!(probe.wind_rect(&disk), Ok(1)) && residual <= 1e-8;
            return Ok(Some(Zero {
                beta: z.re,
                gamma: z.im,
                residual,
                certified,
            }));
        }
    }
    Ok(None)
}

/// Largest real zero of `L(σ, χ_D)` in `(0, 1)`, or the trivial fallback
/// `0` (even χ) / `−1` (odd χ) when the grid scan finds no sign change.
///
/// Scans σ on a step-1e−3 grid, then bisects each bracketed sign change down
/// to width 1e−12 and returns the largest root.
pub fn largest_real_zero(chi: &DirichletCharacter) -> Result<f64> {
    if !chi.is_real() || !chi.is_primitive() || chi.is_principal() {
        return Err(Error::domain(format!(
            "largest_real_zero needs a real primitive character, got modulus {} index {}",
            chi.modulus(),
            chi.index()
        )));
    }
    let f = |sigma: f64| -> Result<f64> { Ok(l_value(Complex64::new(sigma, 0.0), chi)?.re) };

    let step = 1e-3;
    let mut best: Option<f64> = None;
    let mut prev_sigma = step;
    let mut prev_val = f(prev_sigma)?;
    let mut sigma = 2.0 * step;
    while sigma < 1.0 - 0.5 * step {
        let val = f(sigma)?;
        if prev_val == 0.0 {
            best = Some(prev_sigma);
        } else if prev_val * val < 0.0 {
            let (mut lo, mut hi) = (prev_sigma, sigma);
            let (mut flo, _fhi) = (prev_val, val);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                } else if flo * fm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            best = Some(0.5 * (lo + hi));
        }
        prev_sigma = sigma;
        prev_val = val;
        sigma += step;
    }

    Ok(best.unwrap_or(if chi.is_even() { 0.0 } else { -1.0 }))
}
