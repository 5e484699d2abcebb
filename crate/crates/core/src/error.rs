//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(
        "matrix is not Hermitian (deviation {deviation:.3e} exceeds tolerance {tolerance:.3e})"
    )]
    NonHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not complex symmetric (deviation {deviation:.3e} exceeds tolerance {tolerance:.3e})")]
    NotSymmetric { deviation: f64, tolerance: f64 },

    #[error(
        "matrix is not antisymmetric (deviation {deviation:.3e} exceeds tolerance {tolerance:.3e})"
    )]
    NotAntisymmetric { deviation: f64, tolerance: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("composite dimension squared {got} exceeds the configured cap {cap}")]
    DimensionCap { got: usize, cap: usize },

    #[error("top eigenspace of L cannot be separated at tolerance (spread {spread:.3e})")]
    DegenerateTop { spread: f64 },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unsupported system: {0}")]
    UnsupportedSpec(String),

    #[error("system mismatch: state is {state}, witness is {witness}")]
    SpecMismatch { state: String, witness: String },

    #[error("bad weight vector: {0}")]
    BadWeights(String),

    #[error("decomposition size {k} is smaller than the state rank {rank}")]
    BadDecompositionSize { k: usize, rank: usize },

    #[error("state is not normalized: {0}")]
    NotNormalized(String),

    #[error("invalid state data: {0}")]
    InvalidState(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
