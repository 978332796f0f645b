use cochain_forms::FormsError;
use cusp_units::UnitsError;
use eisenstein_delta::EisError;
use fq_algebra::AlgebraError;
use lfunction::LError;
use thiserror::Error;

/// Failures in the special-fibre layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibreError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Eisenstein(#[from] EisError),
    #[error(transparent)]
    Units(#[from] UnitsError),
    #[error(transparent)]
    L(#[from] LError),
    #[error("no log table entry for {0}")]
    MissingLog(String),
    #[error("element and graph have different levels ({0} and {1})")]
    LevelMismatch(String, String),
    #[error("no admissible instance with level degree at most {0}")]
    NoInstance(usize),
    #[error("pair {0} x {1} violates the level hypothesis")]
    Hypothesis(String, String),
}
