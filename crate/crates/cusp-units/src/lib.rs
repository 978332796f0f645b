//! Divisors of modular units supported on the cusps of X₀(I) for square-free I:
//! orders of Δ(dτ) at cusps, the simple units D_a and F_a, the factorization
//! of Δ_I^κ, Manin–Drinfeld witnesses and the element Ξ₀(I).

mod error;
mod level;
mod motivic;
mod units;

pub use error::UnitsError;
pub use level::{ord_cusp, DivisorMask, Level};
pub use motivic::{build_xi, Curve, CuspPair, MotivicElement, MotivicTerm};
pub use units::{
    f_indices, factorization_check, manin_drinfeld_bound, CuspDivisor, FactorizationReport, MdCertificate, UnitExpr,
    Witness,
};
