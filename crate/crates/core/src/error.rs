//! Crate-wide error type.
//!
//! Numerical routines in this crate fail loudly instead of silently returning
//! garbage: evaluating at a pole, asking for a character that does not exist,
//! or running a contour through (or too close to) a zero are all hard errors.

use thiserror::Error;

/// Errors produced by `lbox-core`.
#[derive(Debug, Error)]
pub enum Error {
    /// Evaluation was requested at (or numerically indistinguishable from) a pole.
    #[error("evaluation at a pole: {context}")]
    PoleEvaluation { context: String },

    /// An argument was outside the domain a routine supports.
    #[error("domain error: {context}")]
    Domain { context: String },

    /// An iterative scheme failed to converge within its budget.
    #[error("no convergence after {iterations} iterations: {context}")]
    NoConvergence { iterations: usize, context: String },

    /// A contour passed too close to a zero of the integrand for the winding
    /// number to be trusted, even after the allowed retries.
    #[error("contour too close to a zero near t = {near_t:.6} (min |Λ| = {min_abs:.3e})")]
    ContourNearZero { near_t: f64, min_abs: f64 },

    /// A requested (modulus, index) pair does not name a character.
    #[error("no character with index {index} mod {modulus}")]
    NoSuchCharacter { modulus: u64, index: usize },

    /// The operation requires a non-principal character.
    #[error("operation is undefined for the principal character mod {modulus}")]
    PrincipalCharacter { modulus: u64 },

    /// An ε was requested outside the admissible interval for its region.
    #[error("inadmissible epsilon {epsilon} for region {region}: {context}")]
    InadmissibleEpsilon {
        epsilon: f64,
        region: String,
        context: String,
    },

    /// A discriminant was expected to be fundamental and is not.
    #[error("{d} is not a fundamental discriminant")]
    NotFundamental { d: i64 },

    /// A quotient's denominator was numerically indistinguishable from zero
    /// where the mathematics guarantees it is not — an evaluation bug.
    #[error("near-zero denominator (|value| = {value:.3e}): {context}")]
    NearZeroDenominator { value: f64, context: String },

    /// An internal consistency check (e.g. the functional equation) failed by
    /// more than its tolerance, signalling an evaluation bug upstream.
    #[error("self-check failed (residual {residual:.3e}): {context}")]
    SelfCheckFailed { residual: f64, context: String },

    /// Bad user-facing parameters (CLI or config level misuse of the library).
    #[error("invalid parameter: {context}")]
    InvalidParameter { context: String },

    /// Cache or report I/O failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A cached artifact or report failed to (de)serialize.
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a [`Error::Domain`] with a formatted context.
    pub fn domain(context: impl Into<String>) -> Self {
        Error::Domain {
            context: context.into(),
        }
    }

    /// Shorthand for [`Error::InvalidParameter`].
    pub fn invalid(context: impl Into<String>) -> Self {
        Error::InvalidParameter {
            context: context.into(),
        }
    }
}
