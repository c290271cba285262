use std::path::PathBuf;

use thiserror::Error;

use crate::fieldexpr::{EvalError, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (expected {expected})")]
    IndexOutOfRange { index: usize, expected: &'static str },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported usual-space dimension {0} (expected 1, 2 or 3)")]
    UnsupportedDimension(usize),

    #[error("operator dimension {dim} exceeds the dense limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("condition not satisfied: {0}")]
    ConditionViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge")]
    NonConvergence,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error("configuration error in {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("i/o error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
