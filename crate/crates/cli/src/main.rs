//! `lbox`: a command-line laboratory for Dirichlet L-functions near `s = 1` —
//! character tables, zero localization, verified zero-sum identities, pairing
//! inequalities, explicit-formula residuals, CM heights, and smoothness
//! scans, with deterministic JSON/CSV artifacts.
//!
//! Exit codes: `0` when every executed check passes, `1` when a check ran
//! and failed, `2` for usage, input, or environment errors.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "lbox",
    version,
    about = "Desk-scale numerical laboratory for Dirichlet L-functions near s = 1"
)]
struct Cli {
    /// Path to a RunConfig TOML file (defaults apply when omitted).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Write the command's primary JSON/CSV output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Dirichlet character table of a modulus as JSON.
    Chars {
        #[arg(long)]
        modulus: u64,
    },
    /// Locate the non-trivial zeros of L(s,χ) up to a height (cached).
    Zeros {
        #[arg(long)]
        modulus: u64,
        /// Character index within the modulus's table.
        #[arg(long)]
        index: u64,
        /// Localization height (argument-principle ceiling 50).
        #[arg(long)]
        tmax: Option<f64>,
    },
    /// Run a verification check; emits one JSON report per executed check.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Tabulate a scan as plot-ready CSV.
    Scan {
        #[command(subcommand)]
        what: ScanCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Zero-sum identity at s = 1 for every primitive non-principal χ mod q.
    Lemma1 {
        #[arg(long)]
        modulus: u64,
        /// Height for the zero sum; buckets extend beyond the located range.
        #[arg(long)]
        tmax: Option<f64>,
    },
    /// Randomized pairing-inequality margins over the strip partition.
    Lemma2 {
        #[arg(long)]
        modulus: u64,
        /// Partition parameter f ≥ 2 (e.g. 2, or a chang_f value).
        #[arg(long)]
        f: f64,
        /// Sample count per region.
        #[arg(long)]
        samples: usize,
        /// Sampler seed (defaults to the config seed).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Golden-ratio lower bound on Re L′/L(1,χ) for all q ≤ qmax.
    Golden {
        #[arg(long)]
        qmax: u64,
    },
    /// Explicit-formula residual |ψ_direct − ψ_zeros| at one x.
    Psi {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        x: f64,
        /// Zero-sum truncation height (located zeros only, ≤ 50).
        #[arg(long)]
        tmax: Option<f64>,
    },
    /// CM height identity residuals over fundamental discriminants.
    #[command(name = "thmA")]
    ThmA(ThmAArgs),
    /// Crude Chebyshev bound ψ(y) ≤ 4y at every integer y ≤ ymax.
    Chebyshev {
        #[arg(long)]
        ymax: u64,
    },
}

#[derive(Args)]
struct ThmAArgs {
    /// Lower end of the discriminant range (negative).
    #[arg(long, allow_negative_numbers = true)]
    dmin: i64,
    /// Upper end of the discriminant range (negative).
    #[arg(long, allow_negative_numbers = true)]
    dmax: i64,
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Normalized |Re L′/L(1,χ)|/√(f·log q) over all primitive χ, q ≤ qmax.
    Ratios {
        #[arg(long)]
        qmax: u64,
        /// Normalization family: "classical" (f = 2) or "chang".
        #[arg(long, default_value = "classical")]
        f_mode: String,
        /// Chang constant c (only with --f-mode chang).
        #[arg(long)]
        c: Option<f64>,
    },
    /// Smoothness statistics along factorials or primorial powers.
    Smooth {
        /// "factorials" or "primorial-powers".
        #[arg(long)]
        sequence: String,
        #[arg(long)]
        nmax: u64,
        /// Chang constant c (defaults to the config value).
        #[arg(long)]
        c: Option<f64>,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let config = RunConfig::load(cli.config.as_deref())?;
    let out = cli.out.as_deref();
    match cli.command {
        Command::Chars { modulus } => {
            commands::chars(modulus, out)?;
            Ok(true)
        }
        Command::Zeros { modulus, index, tmax } => {
            commands::zeros(&config, modulus, index, tmax, out)?;
            Ok(true)
        }
        Command::Verify { check } => match check {
            VerifyCommand::Lemma1 { modulus, tmax } => {
                commands::verify_lemma1(&config, modulus, tmax)
            }
            VerifyCommand::Lemma2 { modulus, f, samples, seed } => {
                commands::verify_lemma2(&config, modulus, f, samples, seed)
            }
            VerifyCommand::Golden { qmax } => commands::verify_golden(&config, qmax),
            VerifyCommand::Psi { modulus, x, tmax } => {
                commands::verify_psi(&config, modulus, x, tmax)
            }
            VerifyCommand::ThmA(args) => commands::verify_thma(&config, args.dmin, args.dmax),
            VerifyCommand::Chebyshev { ymax } => commands::verify_chebyshev(&config, ymax),
        },
        Command::Scan { what } => {
            match what {
                ScanCommand::Ratios { qmax, f_mode, c } => {
                    commands::scan_ratios(&config, qmax, &f_mode, c, out)?;
                }
                ScanCommand::Smooth { sequence, nmax, c } => {
                    commands::scan_smooth(&config, &sequence, nmax, c, out)?;
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    // Die silently on a closed pipe (`lbox … | head`) instead of panicking:
    // Rust ignores SIGPIPE by default, turning downstream hangups into
    // write errors inside println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version render as successful output; real parse errors
            // exit 2 per the usage-error contract.
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
