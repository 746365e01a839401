//! Subcommand implementations. Each `verify` handler persists one JSON
//! report per executed check and returns whether every check passed; export
//! handlers (`chars`, `zeros`, `scan`) produce JSON/CSV on stdout or `--out`.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lbox_core::arith::CharacterTable;
use lbox_core::cache::Cache;
use lbox_core::cm::{least_squares_slope, thma_scan};
use lbox_core::harness::{
    chebyshev_bound, golden_bound_scan, lemma1_ii_residual, lemma2_report, psi_residual,
    ratio_scan, smooth_scan, FMode, SmoothSequence,
};
use lbox_core::prelude::*;
use lbox_core::special::MangoldtSieve;
use lbox_core::zeros::locate_zeros;

use crate::config::RunConfig;
use crate::report::{emit_output, persist_report};

/// Newton refinement tolerance for located zeros (also part of the zero-set
/// cache identity).
const ZERO_TOL: f64 = 1e-9;
/// Argument-principle localization ceiling; sums above it use bucketed
/// counts, and checks needing individual zeros must stay below it.
const LOCATE_CAP: f64 = 50.0;
/// Slack in the golden-ratio lower bound `Re L′/L(1,χ) > −0.2764·log q − s`.
const GOLDEN_SLACK: f64 = 0.5;
/// Error-budget constant for the explicit-formula check
/// `|ψ_direct − ψ_zeros| ≤ c·√x·log(qx)²`.
const PSI_BUDGET_C: f64 = 5.0;

/// Primitive non-principal characters mod `q`, in index order.
fn primitive_nonprincipal(q: u64) -> Result<Vec<DirichletCharacter>> {
    if q == 0 {
        bail!("modulus must be positive");
    }
    let table = CharacterTable::new(q);
    let chars: Vec<_> = table
        .enumerate()
        .into_iter()
        .filter(|c| c.is_primitive() && !c.is_principal())
        .collect();
    if chars.is_empty() {
        bail!("modulus {q} has no primitive non-principal characters");
    }
    Ok(chars)
}

/// Loads (or computes and caches) the zero set of `chi` up to `t_locate`.
fn cached_zero_set(
    cache: &Cache,
    chi: &DirichletCharacter,
    t_locate: f64,
    tol: f64,
) -> Result<ZeroSet> {
    let key = ZeroSet::cache_key(chi.modulus(), chi.exponents(), t_locate, tol);
    Ok(cache.get_or_insert_with(&key, || locate_zeros(chi, t_locate, tol))?)
}

fn print_report_line(report: &VerificationReport, path: &Path) {
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {} residual={:e} tolerance={:e} ({})",
        report.check_id,
        report.residual,
        report.tolerance,
        path.display()
    );
}

/// `chars --modulus q`: the full character table as JSON.
pub fn chars(modulus: u64, out: Option<&Path>) -> Result<()> {
    #[derive(serde::Serialize)]
    struct CharRecord {
        modulus: u64,
        index: u64,
        conductor: u64,
        primitive: bool,
        principal: bool,
        real: bool,
        even: bool,
        /// `χ(0), …, χ(q−1)` as `[re, im]` pairs.
        values: Vec<[f64; 2]>,
    }
    if modulus == 0 {
        bail!("modulus must be positive");
    }
    let table = CharacterTable::new(modulus);
    let records: Vec<CharRecord> = table
        .enumerate()
        .iter()
        .map(|c| CharRecord {
            modulus,
            index: c.index(),
            conductor: c.conductor(),
            primitive: c.is_primitive(),
            principal: c.is_principal(),
            real: c.is_real(),
            even: c.parity_a() == 0,
            values: c.value_vector().iter().map(|z| [z.re, z.im]).collect(),
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&records).context("serializing table")?;
    text.push('\n');
    emit_output(out, &text)
}

/// `zeros --modulus q --index j --tmax T`: located zeros as JSON, cached.
pub fn zeros(
    config: &RunConfig,
    modulus: u64,
    index: u64,
    tmax: Option<f64>,
    out: Option<&Path>,
) -> Result<()> {
    if modulus == 0 {
        bail!("modulus must be positive");
    }
    let t = tmax.unwrap_or(config.t_locate);
    if !(t > 0.0) || t > LOCATE_CAP {
        bail!("zero localization needs 0 < tmax ≤ {LOCATE_CAP}, got {t}");
    }
    let table = CharacterTable::new(modulus);
    let chi = table.character(index)?;
    let cache = Cache::open(&config.cache_dir)?;
    let set = cached_zero_set(&cache, &chi, t, ZERO_TOL)?;
    let mut text = serde_json::to_string_pretty(&set).context("serializing zero set")?;
    text.push('\n');
    emit_output(out, &text)
}

/// `verify lemma1 --modulus q --tmax T`: the zero-sum identity
/// `½·ΣΠ₀(ϱ) = log q + 2·Re L′/L(1,χ) − (γ + log 2π + χ(−1)·log 2)`
/// for every primitive non-principal χ mod q.
pub fn verify_lemma1(config: &RunConfig, modulus: u64, tmax: Option<f64>) -> Result<bool> {
    let mut config = config.clone();
    if let Some(t) = tmax {
        config.t_sum = t;
    }
    config.validate()?;
    let hash = config.content_hash()?;
    let tail = TailConstants { c1: config.tail_c1, c2: config.tail_c2 };
    let t_locate = config.t_locate.min(config.t_sum).min(LOCATE_CAP);
    let cache = Cache::open(&config.cache_dir)?;

    let mut all_pass = true;
    for chi in primitive_nonprincipal(modulus)? {
        let set = cached_zero_set(&cache, &chi, t_locate, ZERO_TOL)?;
        let report = lemma1_ii_residual(&chi, config.t_sum, &tail, &set)?;
        let path = persist_report(&config.output_dir, &hash, &report)?;
        print_report_line(&report, &path);
        all_pass &= report.pass;
    }
    Ok(all_pass)
}

/// `verify lemma2 --modulus q --f F --samples N --seed S`: randomized margin
/// verification of both pairing inequalities over R1, R2, R3.
pub fn verify_lemma2(
    config: &RunConfig,
    modulus: u64,
    f: f64,
    samples: usize,
    seed: Option<u64>,
) -> Result<bool> {
    let mut config = config.clone();
    if let Some(s) = seed {
        config.seed = s;
    }
    config.validate()?;
    let hash = config.content_hash()?;
    let params = PartitionParams::new(modulus, f)?;

    let mut all_pass = true;
    for region in [RegionLabel::R1, RegionLabel::R2, RegionLabel::R3] {
        let report = lemma2_report(&params, region, samples, config.seed)?;
        let path = persist_report(&config.output_dir, &hash, &report)?;
        print_report_line(&report, &path);
        all_pass &= report.pass;
    }
    Ok(all_pass)
}

/// `verify golden --qmax Q`: the golden-ratio lower bound on Re L′/L(1,χ)
/// over every primitive non-principal character of modulus ≤ Q.
pub fn verify_golden(config: &RunConfig, qmax: u64) -> Result<bool> {
    let hash = config.content_hash()?;
    let report = golden_bound_scan(qmax, GOLDEN_SLACK)?;
    let path = persist_report(&config.output_dir, &hash, &report)?;
    print_report_line(&report, &path);
    Ok(report.pass)
}

/// `verify psi --modulus q --x X --tmax T`: the truncated explicit formula
/// `ψ(x,χ) ≈ −Σ_{|γ|<T} x^ϱ/ϱ` against the sieve sum, per character.
pub fn verify_psi(config: &RunConfig, modulus: u64, x: f64, tmax: Option<f64>) -> Result<bool> {
    let mut config = config.clone();
    if let Some(t) = tmax {
        config.t_locate = t;
    }
    config.validate()?;
    let t = config.t_locate;
    if t > LOCATE_CAP {
        bail!("the explicit-formula check sums located zeros only; tmax ≤ {LOCATE_CAP}");
    }
    if !(x.is_finite() && x >= 2.0) {
        bail!("x must be finite and ≥ 2, got {x}");
    }
    let hash = config.content_hash()?;
    let cache = Cache::open(&config.cache_dir)?;
    let sieve = MangoldtSieve::new(x.ceil() as usize);

    let mut all_pass = true;
    for chi in primitive_nonprincipal(modulus)? {
        let set = cached_zero_set(&cache, &chi, t, ZERO_TOL)?;
        let report = psi_residual(x, &chi, Some(t), PSI_BUDGET_C, &set, &sieve)?;
        let path = persist_report(&config.output_dir, &hash, &report)?;
        print_report_line(&report, &path);
        all_pass &= report.pass;
    }
    Ok(all_pass)
}

/// `verify thmA --dmin A --dmax B`: the CM height identity residual for
/// every fundamental discriminant in `[A, B]`, plus its trend in log|D|.
pub fn verify_thma(config: &RunConfig, dmin: i64, dmax: i64) -> Result<bool> {
    let hash = config.content_hash()?;
    let reports = thma_scan(dmin, dmax)?;
    if reports.is_empty() {
        bail!("no fundamental discriminants in [{dmin}, {dmax}]");
    }
    let mut all_pass = true;
    let mut points = Vec::new();
    for report in &reports {
        let path = persist_report(&config.output_dir, &hash, report)?;
        print_report_line(report, &path);
        all_pass &= report.pass;
        points.push((report.computed["log_abs_d"], report.residual));
    }
    if points.len() >= 2 {
        let slope = least_squares_slope(&points)?;
        println!(
            "trend: residual-vs-log|D| least-squares slope = {slope:.6} over {} discriminants",
            points.len()
        );
    }
    Ok(all_pass)
}

/// `verify chebyshev --ymax Y`: the crude bound `Σ_{n≤y} Λ(n) ≤ 4y` at every
/// integer `y ≤ Y`.
pub fn verify_chebyshev(config: &RunConfig, ymax: u64) -> Result<bool> {
    if ymax < 2 {
        bail!("ymax must be at least 2");
    }
    let hash = config.content_hash()?;
    let report = chebyshev_bound(ymax);
    let path = persist_report(&config.output_dir, &hash, &report)?;
    print_report_line(&report, &path);
    Ok(report.pass)
}

/// `scan ratios --qmax Q --f-mode {classical|chang} --c C`: the normalized
/// ratio `|Re L′/L(1,χ)|/√(f(q)·log q)` over all primitive non-principal χ,
/// as plot-ready CSV.
pub fn scan_ratios(
    config: &RunConfig,
    qmax: u64,
    f_mode: &str,
    c: Option<f64>,
    out: Option<&Path>,
) -> Result<()> {
    let mode = match f_mode {
        "classical" => {
            if c.is_some() {
                bail!("--c only applies to --f-mode chang");
            }
            FMode::Classical
        }
        "chang" => FMode::Chang { c: c.unwrap_or(config.chang_c) },
        other => bail!("unknown f-mode {other:?}; expected classical or chang"),
    };
    let scan = ratio_scan(qmax, mode)?;
    let mut csv = String::from("q,index,real,f,ratio\n");
    for row in &scan.rows {
        writeln!(csv, "{},{},{},{},{}", row.q, row.index, row.real, row.f, row.ratio)?;
    }
    emit_output(out, &csv)?;
    if let Some((ratio, q, index)) = scan.max_complex {
        eprintln!("max complex ratio {ratio} at q={q} index={index}");
    }
    if let Some((ratio, q, index)) = scan.max_real {
        eprintln!("max Siegel-adjusted real ratio {ratio} at q={q} index={index}");
    }
    Ok(())
}

/// `scan smooth --sequence {factorials|primorial-powers} --nmax N`:
/// smoothness statistics and Chang's f along a highly-composite modulus
/// sequence, CSV columns `q, 𝒫(q), q′, K_q, f(q), f(q)/log q`.
pub fn scan_smooth(
    config: &RunConfig,
    sequence: &str,
    nmax: u64,
    c: Option<f64>,
    out: Option<&Path>,
) -> Result<()> {
    let seq = match sequence {
        "factorials" => SmoothSequence::Factorials { n_max: nmax },
        "primorial-powers" => SmoothSequence::PrimorialPowers { n_max: nmax },
        other => bail!("unknown sequence {other:?}; expected factorials or primorial-powers"),
    };
    let rows = smooth_scan(&seq, c.unwrap_or(config.chang_c))?;
    let mut csv = String::from("q,max_prime,radical,k_q,chang_f,f_over_log_q\n");
    for row in &rows {
        let q_cell = match row.q {
            Some(q) => q.to_string(),
            None => row.label.clone(),
        };
        let radical_cell = row.radical.map(|r| r.to_string()).unwrap_or_default();
        writeln!(
            csv,
            "{q_cell},{},{radical_cell},{},{},{}",
            row.max_prime, row.k_q, row.f, row.f_ratio
        )?;
    }
    emit_output(out, &csv)
}
