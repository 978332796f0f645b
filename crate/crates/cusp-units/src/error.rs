use eisenstein_delta::EisError;
use fq_algebra::AlgebraError;
use thiserror::Error;

/// Failures of the cusp-divisor layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Eisenstein(#[from] EisError),
    #[error("level {0} must be monic and square-free")]
    BadLevel(String),
    #[error("{0} does not divide the level {1}")]
    NotADivisor(String, String),
    #[error("level {0} has no prime factor")]
    NoPrimeFactor(String),
    #[error("cocycle condition fails: nonzero coefficient {coefficient} at ({first}, {second})")]
    Cocycle { first: String, second: String, coefficient: i64 },
}
