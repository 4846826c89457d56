use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("frequency values are not strictly increasing at index {index} ({prev} >= {next})")]
    NonMonotone { index: usize, prev: f64, next: f64 },

    #[error("frequency value at index {index} is negative or not finite ({value})")]
    NegativeFrequency { index: usize, value: f64 },

    #[error("requested {requested} terms but only {available} are available")]
    OutOfRange { requested: usize, available: usize },

    #[error("all materialized frequency values are zero")]
    Degenerate,

    #[error("operation is not supported for frequency kind `{0}`")]
    UnsupportedKind(String),

    #[error("decomposition does not match the series frequency: {0}")]
    MismatchedDecomposition(String),

    #[error("empty scan: {0}")]
    EmptyScan(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("materialization would exceed the cap of {cap} terms")]
    HorizonExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
