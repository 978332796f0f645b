use cochain_forms::FormsError;
use eisenstein_delta::EisError;
use fq_algebra::AlgebraError;
use thiserror::Error;

/// Failures while assembling L-functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LError {
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Eisenstein(#[from] EisError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("eigenforms live at different levels ({0} and {1})")]
    LevelMismatch(String, String),
    #[error("eigenvalue fields of {0} and {1} are not compatible")]
    IncompatibleFields(String, String),
    #[error("no rational reconstruction certified with series up to t^{0}")]
    NotConverged(usize),
    #[error("Phi has a pole at s = 0: f = g or the level hypothesis is violated")]
    PoleAtZero,
    #[error("Phi has a pole at s = 1")]
    PoleAtOne,
}
