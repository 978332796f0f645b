//! Harmonic cochains on the quotient graph Γ₀(I)\𝒯: cusp forms, Hecke
//! operators, newform decomposition and Fourier coefficients.

mod eigen;
mod error;
mod fourier;
pub mod linalg;
mod space;
pub mod zfactor;

pub use eigen::{Eigenform, FormsContext, Newform};
pub use error::FormsError;
pub use fourier::{coefficient, coefficients_up_to, first_coefficient, fourier_table, newform_coefficient, Divisor};
pub use linalg::Matrix;
pub use space::{harmonic_constraints, hecke_matrices, value_on_edge, Cochain, CuspSpace, MeasureWeights};
