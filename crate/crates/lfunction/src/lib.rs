//! Zeta functions, Rankin-Selberg L-functions of pairs of eigenforms and the
//! completed function Φ_{f,g}, all as exact rational functions of t = q^{-s}.

mod error;
pub mod phi;
pub mod rankin;
pub mod rankin_trick;
pub mod zeta;

pub use error::LError;
pub use phi::{phi_fn, Hypothesis, PhiFunction};
pub use rankin::{rankin_l, FormPair, LocalFactor, RankinL, Reduction};
pub use rankin_trick::{rankin_lhs, rankin_trick_check, RankinTrickReport};
pub use zeta::{l_infinity, l_infinity_shifted, zeta_a, zeta_i, zeta_i_double};
