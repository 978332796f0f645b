use bruhat_tits::TreeError;
use fq_algebra::AlgebraError;
use thiserror::Error;

/// Failures while evaluating Eisenstein series and discriminant tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EisError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("rational function has a pole at t = {0}")]
    Pole(String),
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("level {0} is not monic and square-free")]
    BadLevel(String),
    #[error("truncation order {order} is below the vertex level {level}; the tail bound needs order >= level")]
    TruncationTooShort { order: i64, level: i64 },
    #[error("value {0} is not an integer")]
    NotIntegral(String),
    #[error("log|Delta({0} tau)| is not invariant under the congruence subgroup")]
    NotInvariant(String),
    #[error("derivative sums are inconsistent across edge {edge}: table difference {table}, integrated {integrated}")]
    PathDependence { edge: String, table: String, integrated: String },
}
