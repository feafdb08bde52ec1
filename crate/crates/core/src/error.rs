//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not positive semidefinite")]
    NotPsd,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("value must be positive, got {0}")]
    NonPositive(String),

    #[error("packet phase {phase} out of range for packet size {size}")]
    IndexOutOfRange { phase: usize, size: usize },

    #[error("measure has all its mass at the origin")]
    DegenerateSupport,

    #[error("squared weight {given} exceeds the subnormality threshold {threshold}")]
    AboveThreshold { given: String, threshold: String },

    #[error("density exponent {0} would leave the representable class")]
    UnsupportedDensity(String),

    #[error("invalid weight family: {0}")]
    InvalidFamily(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("bounding root is not rational; cannot report an exact threshold")]
    IrrationalThreshold,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
