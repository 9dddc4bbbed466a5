use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("bad bipartition: {d1}x{d2} does not factor dimension {dim}")]
    BadBipartition { d1: usize, d2: usize, dim: usize },

    #[error("bipartition required")]
    MissingBipartition,

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("non-finite value in input")]
    NonFinite,

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical inconsistency: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
