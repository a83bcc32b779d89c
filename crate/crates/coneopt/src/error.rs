//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero vector has no direction")]
    ZeroVector,

    #[error("objective dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("cone threshold must lie in the open interval (0, 1), got {0}")]
    InvalidThreshold(f64),

    #[error("cone axis must have unit norm, got norm {0}")]
    NonUnitAxis(f64),

    #[error("non-finite component at index {0}")]
    NonFinite(usize),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("unknown decision id `{0}`")]
    UnknownDecision(String),

    #[error("duplicate decision id `{0}`")]
    DuplicateId(String),

    #[error("a problem must contain at least one decision")]
    EmptyProblem,

    #[error("invalid box at coordinate {0}: lower bound must be strictly below upper")]
    InvalidBox(usize),

    #[error("point {0:?} is not strictly interior to the decision box")]
    NonInteriorPoint(Vec<f64>),

    #[error(
        "analytic Jacobian disagrees with central differences at {point:?}: \
         entry ({row},{col}) has relative error {rel:.3e}"
    )]
    JacobianMismatch {
        point: Vec<f64>,
        row: usize,
        col: usize,
        rel: f64,
    },

    #[error("unknown generator `{name}`; available: {available}")]
    UnknownGenerator { name: String, available: String },

    #[error("grid resolution must be at least 2 per axis, got {0}")]
    BadGridResolution(usize),

    #[error("problem file field `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("empty threshold grid")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
