use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient size mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("ambient size {0} exceeds the supported maximum {1}")]
    AmbientTooLarge(usize, usize),

    #[error("index {index} outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("inner ideal is not contained in the outer ideal")]
    NotContained,

    #[error("the module is zero")]
    ZeroModule,

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid linear quotient order: {0}")]
    InvalidOrder(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("n = {n} exceeds the exhaustive cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("theorem-level check failed: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
