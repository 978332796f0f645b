use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field size {0} exceeds the table realization limit")]
    FieldTooLarge(u32),
    #[error("norm of zero")]
    NormOfZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("polynomial {0} is not square-free")]
    NotSquareFree(String),
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("precision exhausted: need coefficients below exponent {needed}, known only below {known}")]
    Precision { needed: i64, known: i64 },
    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("fields differ: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
}
