//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in library calls.
///
/// Variants are coarse on purpose: callers branch on the kind of failure
/// (bad input vs. numeric breakdown vs. I/O), not on individual operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A point or direction has a different dimension than the operation expects.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An argument is outside the documented range (negative radius, m < 2, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A result exceeds f64 range; a scaled variant may be available.
    #[error("overflow computing {what} at argument {arg}")]
    Overflow { what: &'static str, arg: f64 },

    /// Evaluation at or too close to a singular point of a field.
    #[error("singularity: {0}")]
    Singularity(String),

    /// The operation is defined by the contract only for a narrower case.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Rejection sampling gave up.
    #[error("sampling failed after {attempts} rejection attempts")]
    SamplingFailed { attempts: u64 },

    /// The mean-ratio inversion produced a negative radicand: the field
    /// cannot be panharmonic at the probe point.
    #[error("not panharmonic at {point}: radicand {radicand:.3e} is negative")]
    NotPanharmonic { point: String, radicand: f64 },

    /// A computation produced NaN or infinity where a finite value is required.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// Malformed domain/field/point specification string.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: usage and input problems map to 2,
    /// numeric/check failures to 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::InvalidArgument(_)
            | Error::Unsupported(_)
            | Error::Parse(_) => 2,
            _ => 1,
        }
    }
}
