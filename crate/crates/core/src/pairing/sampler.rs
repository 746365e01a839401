//! Counter-addressed random sampling of the partition regions.
//!
//! Every attempt index maps to a fixed stream position (`word_pos = 4·k`, two
//! `f64` draws per attempt), so the point produced by attempt `k` depends only
//! on `(seed, k)` — never on how many attempts ran before it, or on which
//! thread evaluated it. Sampling is rejection against [`classify`]: attempt
//! `k` proposes a point from the region's bounding box and keeps it iff it
//! classifies into the requested region. The accepted set for `(seed, region,
//! n)` is therefore reproducible across runs, thread counts, and shardings.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lemma2::lemma2_check;
use super::partition::{classify, PartitionParams, RegionLabel};
use crate::error::{Error, Result};

/// Attempts evaluated per parallel block during the rejection scan.
const SCAN_BLOCK: u64 = 4096;

/// Attempt budget per requested point before giving up.
const MAX_ATTEMPTS_PER_POINT: u64 = 1000;

/// Deterministic, seekable sampler over the critical strip.
#[derive(Debug, Clone, Copy)]
pub struct StripSampler {
    seed: u64,
}

impl StripSampler {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The two uniform draws assigned to attempt `k`.
    fn raw_pair(&self, attempt: u64) -> (f64, f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_word_pos(attempt as u128 * 4);
        (rng.random::<f64>(), rng.random::<f64>())
    }

    /// The box proposal attempt `k` makes for `region` (before rejection).
    pub fn propose(&self, attempt: u64, region: RegionLabel, params: &PartitionParams) -> Complex64 {
        let (sigma_raw, t_raw) = self.raw_pair(attempt);
        let (sigma, t_lo, t_hi) = match region {
            RegionLabel::R1 => (sigma_raw, 1.0, 2.0),
            RegionLabel::R2 => (sigma_raw, params.t_cut, 1.0),
            RegionLabel::R3 => (
                params.sigma_cut + sigma_raw * (1.0 - 2.0 * params.sigma_cut),
                0.0,
                1.0,
            ),
            RegionLabel::Q => unreachable!("propose is never called for Q"),
        };
        // Fold the t draw onto both half-planes: u ∈ [−1, 1), |t| ∈ [t_lo, t_hi].
        let u = 2.0 * t_raw - 1.0;
        let t = u.signum() * (t_lo + u.abs() * (t_hi - t_lo));
        Complex64::new(sigma, t)
    }

    /// The first `n` accepted points of `region`, in attempt order.
    ///
    /// Unbounded |t| is truncated on R1: proposals draw `|t| ∈ [1, 2]`, which
    /// covers the region's full σ-range and the t-band adjacent to the cut.
    pub fn sample_region(
        &self,
        params: &PartitionParams,
        region: RegionLabel,
        n: usize,
    ) -> Result<Vec<Complex64>> {
        if region == RegionLabel::Q {
            return Err(Error::invalid(
                "sampling Q is not supported: the pairing bounds make no claim there",
            ));
        }
        if n == 0 {
            return Ok(Vec::new());
        }
        let cap = MAX_ATTEMPTS_PER_POINT * n as u64;
        let mut accepted = Vec::with_capacity(n);
        let mut block_start = 0u64;
        while accepted.len() < n && block_start < cap {
            let block_end = (block_start + SCAN_BLOCK).min(cap);
            // Ranges collect in index order under rayon, so the accepted set
            // is independent of the thread schedule.
            let hits: Vec<Option<Complex64>> = (block_start..block_end)
                .into_par_iter()
                .map(|attempt| {
                    let z = self.propose(attempt, region, params);
                    if !(z.re > 0.0 && z.re < 1.0) {
                        return None;
                    }
                    match classify(z, params) {
                        Ok(label) if label == region => Some(z),
                        _ => None,
                    }
                })
                .collect();
            for z in hits.into_iter().flatten() {
                accepted.push(z);
                if accepted.len() == n {
                    break;
                }
            }
            block_start = block_end;
        }
        if accepted.len() < n {
            return Err(Error::NoConvergence {
                iterations: cap as usize,
                context: format!(
                    "rejection sampling of {region} accepted only {} of {n} points",
                    accepted.len()
                ),
            });
        }
        Ok(accepted)
    }
}

/// Aggregate of a randomized margin scan over one region.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub region: RegionLabel,
    pub seed: u64,
    pub points: usize,
    /// Shifts actually exercised (inadmissible entries of the grid dropped).
    pub epsilons: Vec<f64>,
    /// Point × shift checks performed.
    pub checks: usize,
    /// Checks whose lower or upper margin fell below the floating-point slack.
    pub violations: usize,
    pub min_lower_margin: f64,
    pub min_upper_margin: f64,
}

/// Samples `n` points of `region` and verifies both pairing margins at each,
/// over the shift grid `{ε(q), 2ε(q), 1/2}` (restricted to admissible shifts).
///
/// A margin counts as a violation below `−1e−12·(1 + Π_0)`, absorbing roundoff
/// in the exact-zero cases (R3's upper bound at t = 0 is an equality).
pub fn lemma2_sample(
    params: &PartitionParams,
    region: RegionLabel,
    n: usize,
    seed: u64,
) -> Result<SampleOutcome> {
    let sampler = StripSampler::new(seed);
    let points = sampler.sample_region(params, region, n)?;

    let mut epsilons = vec![params.eps_q, 2.0 * params.eps_q, 0.5];
    epsilons.dedup();
    if region == RegionLabel::R2 {
        epsilons.retain(|&e| e >= params.eps_q);
    }

    let results: Vec<(f64, f64, bool)> = points
        .par_iter()
        .flat_map_iter(|&z| {
            let params = *params;
            let epsilons = epsilons.clone();
            epsilons.into_iter().map(move |eps| {
                let m = lemma2_check(z, eps, &params)
                    .expect("sampled point admits every filtered shift");
                let slack = -1e-12 * (1.0 + m.pi0.abs());
                let bad = m.lower_margin < slack || m.upper_margin < slack;
                (m.lower_margin, m.upper_margin, bad)
            })
        })
        .collect();

    let checks = results.len();
    let violations = results.iter().filter(|r| r.2).count();
    let min_lower_margin = results.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let min_upper_margin = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);

    Ok(SampleOutcome {
        region,
        seed,
        points: points.len(),
        epsilons,
        checks,
        violations,
        min_lower_margin,
        min_upper_margin,
    })
}
