//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. The [`Error::code`] string is
//! stable and machine-readable; the CLI emits it on standard error as JSON.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Distribution parameters rejected at construction.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation was evaluated outside its domain (e.g. hazard where the
    /// survival function vanishes).
    #[error("survival function is zero at t = {t}")]
    SurvivalZero { t: f64 },

    /// Quantile argument outside (0, 1).
    #[error("quantile argument {u} outside (0, 1)")]
    QuantileRange { u: f64 },

    /// Adaptive quadrature exhausted its subdivision budget. Carries the best
    /// estimate and its error bound so callers can decide what to do with it.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error}")]
    QuadratureNonConvergence { estimate: f64, error: f64 },

    /// An integral required by a measure diverges (or its evaluation failed).
    #[error("integral diverges or could not be evaluated: {0}")]
    Divergent(String),

    /// The ECDF-normalized estimator has no observations beyond t.
    #[error("no data beyond t = {t}")]
    NoDataBeyondT { t: f64 },

    /// Sample unusable for the requested estimator (too small, zero spread,
    /// non-finite entries).
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// A monotone transform failed its monotonicity check.
    #[error("transform is not strictly increasing near x = {x}")]
    NonMonotoneTransform { x: f64 },

    /// Optimizer failed from every start point.
    #[error("optimization did not converge: {0}")]
    NonConvergence(String),

    /// Malformed distribution spec string, time grid, or config file.
    #[error("parse error: {0}")]
    Parse(String),

    /// Data file could not be read or contained no usable numbers.
    #[error("unreadable data: {0}")]
    UnreadableData(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error JSON.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::SurvivalZero { .. } => "survival-zero-at-t",
            Error::QuantileRange { .. } => "quantile-out-of-range",
            Error::QuadratureNonConvergence { .. } => "quadrature-non-convergence",
            Error::Divergent(_) => "divergent-integral",
            Error::NoDataBeyondT { .. } => "no-data-beyond-t",
            Error::DegenerateSample(_) => "degenerate-sample",
            Error::NonMonotoneTransform { .. } => "non-monotone-transform",
            Error::NonConvergence(_) => "non-convergence",
            Error::Parse(_) => "parse-error",
            Error::UnreadableData(_) => "unreadable-data",
        }
    }
}
