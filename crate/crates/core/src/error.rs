use thiserror::Error;

use crate::tensor::ScalarField;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("non-finite coefficient at index {index:?}")]
    NonFinite { index: Vec<usize> },

    #[error("real tensor given a coefficient with nonzero imaginary part at index {index:?}")]
    ImaginaryInReal { index: Vec<usize> },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("scalar field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: ScalarField,
        found: ScalarField,
    },

    #[error("index {index:?} out of range for dimension {dim}")]
    IndexOutOfRange { index: Vec<usize>, dim: usize },

    #[error("exact sup-norm is only available for real tensors on l_inf balls")]
    UnsupportedExact,

    #[error("resource guard exceeded: {what} = {value} exceeds limit {limit}")]
    Guard {
        what: String,
        value: u64,
        limit: u64,
    },

    #[error("invalid exponent {value}: {reason}")]
    InvalidExponent { value: f64, reason: String },

    #[error("bijection error: {0}")]
    Pairing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl LabError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        LabError::InvalidArgument(msg.into())
    }

    pub(crate) fn exponent(value: f64, reason: impl Into<String>) -> Self {
        LabError::InvalidExponent {
            value,
            reason: reason.into(),
        }
    }

    /// True for errors caused by a size or resource guard.
    pub fn is_guard(&self) -> bool {
        matches!(self, LabError::Guard { .. })
    }
}

impl From<std::io::Error> for LabError {
    fn from(err: std::io::Error) -> Self {
        LabError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
