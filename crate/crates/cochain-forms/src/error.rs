use bruhat_tits::TreeError;
use fq_algebra::AlgebraError;
use thiserror::Error;

/// Failures in the cochain and Hecke layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("characteristic polynomial {0} is not monic over Z")]
    NonIntegralCharpoly(String),
    #[error("factor coefficients of a degree-{0} polynomial exceed the largest modulus")]
    FactorBoundExceeded(usize),
    #[error("Hecke operators up to degree {max_degree} leave unresolved eigenblocks of dimensions {dims:?} at level {level}")]
    Inseparable { level: String, max_degree: usize, dims: Vec<usize> },
    #[error("cochain is not a cusp form of level {0}")]
    NotCuspidal(String),
    #[error("cochain values live at level {found}, expected {expected}")]
    LevelMismatch { expected: String, found: String },
    #[error("eigenform has c(f,1) = 0 and cannot be normalized")]
    ZeroLeadingCoefficient,
    #[error("Hecke image is not a multiple of the form for P = {0}")]
    NotAnEigenform(String),
    #[error("character sum does not lie in the coefficient field")]
    CharacterSumNotInField,
    #[error("{0} is not a monic prime")]
    NotPrime(String),
    #[error("{0} does not divide the level {1}")]
    NotADivisor(String, String),
}
