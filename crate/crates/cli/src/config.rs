//! Run configuration: precision tag, default heights, tail-model constants,
//! Chang-f parameters, the sampler seed, and artifact directories.
//!
//! The effective config (file values, then per-flag overrides, then the
//! `LBOX_CACHE_DIR` environment override) is what gets content-hashed into
//! report file names, so a rerun under the same configuration lands on the
//! same artifact paths with byte-identical contents.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Environment variable overriding `cache_dir`.
pub const CACHE_DIR_ENV: &str = "LBOX_CACHE_DIR";

/// Tunable run parameters; every subcommand reads from one of these.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Floating-point regime tag recorded in every report.
    pub precision: String,
    /// Default height for zero localization (argument-principle ceiling 50).
    pub t_locate: f64,
    /// Default height for zero sums; above `t_locate` the bucketed counting
    /// ladder takes over.
    pub t_sum: f64,
    /// Zero-count tail model `N(t) ≤ c₁·t·log(qt) + c₂`.
    pub tail_c1: f64,
    pub tail_c2: f64,
    /// Chang smoothness constant `c` and cap multiplier for `f(q)`.
    pub chang_c: f64,
    pub chang_cap: f64,
    /// Master seed; every sampled check derives its stream from this (or an
    /// explicit `--seed` override).
    pub seed: u64,
    /// Directory for verification reports (JSON, append-only).
    pub output_dir: PathBuf,
    /// Directory for the content-addressed artifact cache.
    pub cache_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: "f64".to_string(),
            t_locate: 30.0,
            t_sum: 30.0,
            tail_c1: 1.0,
            tail_c2: 10.0,
            chang_c: 1.0,
            chang_cap: 1.0,
            seed: 7,
            output_dir: PathBuf::from("reports"),
            cache_dir: PathBuf::from(".lbox-cache"),
        }
    }
}

impl RunConfig {
    /// Loads a TOML config file, or the defaults when `path` is `None`,
    /// then applies the `LBOX_CACHE_DIR` environment override and validates.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut config = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config file {}", p.display()))?;
                toml::from_str(&text)
                    .with_context(|| format!("parsing config file {}", p.display()))?
            }
            None => RunConfig::default(),
        };
        if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
            if !dir.is_empty() {
                config.cache_dir = PathBuf::from(dir);
            }
        }
        config.validate()?;
        Ok(config)
    }

    /// Every numeric field must be positive and finite (the seed merely
    /// nonzero), and the precision tag non-empty.
    pub fn validate(&self) -> Result<()> {
        let numeric = [
            ("t_locate", self.t_locate),
            ("t_sum", self.t_sum),
            ("tail_c1", self.tail_c1),
            ("tail_c2", self.tail_c2),
            ("chang_c", self.chang_c),
            ("chang_cap", self.chang_cap),
        ];
        for (name, value) in numeric {
            if !value.is_finite() || value <= 0.0 {
                bail!("config field {name} must be positive and finite, got {value}");
            }
        }
        if self.seed == 0 {
            bail!("config field seed must be positive");
        }
        if self.precision.is_empty() {
            bail!("config field precision must be a non-empty tag");
        }
        Ok(())
    }

    /// Canonical TOML form; [`RunConfig::load`] of this text reproduces the
    /// value exactly (lossless round trip).
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).context("serializing config")
    }

    /// Short content hash of the canonical form, used in report file names.
    pub fn content_hash(&self) -> Result<String> {
        let canonical = self.to_toml()?;
        let digest = Sha256::digest(canonical.as_bytes());
        Ok(hex::encode(&digest[..6]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip_is_lossless() {
        let mut config = RunConfig::default();
        config.t_sum = 61.5;
        config.seed = 123_456_789_012_345;
        config.output_dir = PathBuf::from("/tmp/deep/reports");
        let text = config.to_toml().unwrap();
        let back: RunConfig = toml::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn defaults_validate_and_hash_stably() {
        let config = RunConfig::default();
        config.validate().unwrap();
        assert_eq!(config.content_hash().unwrap(), config.content_hash().unwrap());
        assert_eq!(config.content_hash().unwrap().len(), 12);
    }

    #[test]
    fn hash_tracks_every_field() {
        let base = RunConfig::default();
        let mut other = base.clone();
        other.seed = 8;
        assert_ne!(base.content_hash().unwrap(), other.content_hash().unwrap());
        let mut dir = base.clone();
        dir.cache_dir = PathBuf::from("elsewhere");
        assert_ne!(base.content_hash().unwrap(), dir.content_hash().unwrap());
    }

    #[test]
    fn validation_rejects_nonpositive_fields() {
        let mut config = RunConfig::default();
        config.tail_c1 = 0.0;
        assert!(config.validate().is_err());
        let mut config = RunConfig::default();
        config.t_sum = f64::NAN;
        assert!(config.validate().is_err());
        let mut config = RunConfig::default();
        config.seed = 0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = toml::from_str::<RunConfig>("t_locate = 30.0\nmystery = 1\n");
        assert!(err.is_err());
    }
}
