use fq_algebra::AlgebraError;
use thiserror::Error;

/// Failures of tree and quotient computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not invertible over A (determinant {0})")]
    NotInvertibleOverA(String),
    #[error("level must be monic and square-free, got {0}")]
    BadLevel(String),
    #[error("reduction did not terminate within {0} steps")]
    ReductionDiverged(usize),
    #[error("ends did not stabilize below depth {0}")]
    EndsUnstable(usize),
    #[error("no coprime lift found for a point of P^1(A/I) within degree {0}")]
    LiftFailed(usize),
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
}
