use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported algebra: type {ty} with n = {n}")]
    UnsupportedAlgebra { ty: String, n: usize },

    #[error("vector is not a root of {0}")]
    RootNotInSystem(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix does not lie in the algebra")]
    NotInAlgebra,

    #[error("invalid grading vector: {0}")]
    InvalidGrading(String),

    #[error("invalid curve configuration: {0}")]
    InvalidCurve(String),

    #[error("invalid degree schedule: {0}")]
    InvalidSchedule(String),

    #[error("element is not spanned by the degree window {lo}..={hi}")]
    OutsideWindow { lo: i64, hi: i64 },

    #[error("invalid connection form: {0}")]
    InvalidConnection(String),

    #[error("1-form has a pole at infinity")]
    PoleAtInfinity,

    #[error("invalid Tyurin data: {0}")]
    InvalidTyurinData(String),

    #[error("root decomposition failed: {0}")]
    Decomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
