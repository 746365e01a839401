//! Report persistence: append-only JSON artifacts named by check id and
//! config content hash.
//!
//! "Append-only" means a name, once written, is never rewritten with
//! different bytes: reruns under the same config must reproduce the report
//! exactly, so an existing file is compared byte-for-byte and a mismatch is
//! an error rather than a silent overwrite.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use lbox_core::prelude::VerificationReport;

/// File-system-safe rendering of a check id (`/` separators to `_`).
pub fn sanitize_check_id(check_id: &str) -> String {
    check_id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "=.-+".contains(c) { c } else { '_' })
        .collect()
}

/// Serializes a report to its canonical persisted byte form.
pub fn report_bytes(report: &VerificationReport) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(report).context("serializing report")?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes `report` under `dir` as `<check_id>-<config_hash>.json`,
/// idempotently: identical existing bytes are left untouched, differing
/// bytes are a hard error. Returns the artifact path.
pub fn persist_report(
    dir: &Path,
    config_hash: &str,
    report: &VerificationReport,
) -> Result<PathBuf> {
    let bytes = report_bytes(report)?;
    let name = format!("{}-{config_hash}.json", sanitize_check_id(&report.check_id));
    let path = dir.join(name);
    fs::create_dir_all(dir)
        .with_context(|| format!("creating report directory {}", dir.display()))?;
    if path.exists() {
        let existing =
            fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
        if existing != bytes {
            bail!(
                "report {} already exists with different contents; \
                 refusing to overwrite an append-only artifact",
                path.display()
            );
        }
        return Ok(path);
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, &bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, &path).with_context(|| format!("publishing {}", path.display()))?;
    Ok(path)
}

/// Writes primary command output (JSON or CSV) to `--out` or stdout.
pub fn emit_output(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent)
                        .with_context(|| format!("creating {}", parent.display()))?;
                }
            }
            fs::write(path, contents)
                .with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
