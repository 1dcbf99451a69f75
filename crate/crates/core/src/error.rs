use alloc::string::String;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("dimension {dim} is not valid here: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("invalid qubit selection: {0}")]
    InvalidSelection(String),

    #[error("capacity exceeded: {what} = {value} exceeds limit {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("unsupported case: {0}")]
    Unsupported(&'static str),

    #[error("invalid spin j = {doubled}/2 for N = {n}: only j = N/2 - 1/2 and j = N/2 + 1/2 couple")]
    InvalidSpin { doubled: u32, n: usize },

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;
