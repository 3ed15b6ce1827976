use thiserror::Error;

/// Errors surfaced by model construction, parsing and the analysis entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix {matrix}, row {row}, col {col}: {reason}")]
    InvalidEntry {
        matrix: usize,
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial environments differ: {0}")]
    EnvMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("degree cap {cap} cannot represent a map of degree {degree}")]
    CapTooSmall { cap: usize, degree: usize },

    #[error("map is not an automorphism candidate: {0}")]
    NotAutomorphism(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
