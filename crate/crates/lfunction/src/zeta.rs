//! Zeta functions of A = F_q[T] and the place at infinity, in t = q^{-s}.

use eisenstein_delta::RationalT;
use fq_algebra::{arith, Num, NumPoly, PolyA};

use crate::error::LError;

fn one_minus(c: Num, k: usize) -> RationalT {
    RationalT::from_poly(&NumPoly::from_ints(&[1]) - &NumPoly::monomial(c, k))
}

/// ζ_A(s) = 1/(1 - q t).
pub fn zeta_a(q: u32) -> RationalT {
    &RationalT::one() / &one_minus(Num::int(i64::from(q)), 1)
}

/// ζ_I(s) = ζ_A(s) Π_{P|I} (1 - t^{deg P}).
pub fn zeta_i(level: &PolyA) -> Result<RationalT, LError> {
    let mut z = zeta_a(level.field().q());
    for p in arith::squarefree_primes(level)? {
        z = &z * &one_minus(Num::one(), p.degree().unwrap_or(0));
    }
    Ok(z)
}

/// ζ_I(2s), i.e. ζ_I with t replaced by t².
pub fn zeta_i_double(level: &PolyA) -> Result<RationalT, LError> {
    let mut z = &RationalT::one() / &one_minus(Num::int(i64::from(level.field().q())), 2);
    for p in arith::squarefree_primes(level)? {
        z = &z * &one_minus(Num::one(), 2 * p.degree().unwrap_or(0));
    }
    Ok(z)
}

/// L_∞(s) = 1/(1 - t).
pub fn l_infinity() -> RationalT {
    eisenstein_delta::l_infinity()
}

/// L_∞(s + 1) = 1/(1 - t/q).
pub fn l_infinity_shifted(q: u32) -> RationalT {
    &RationalT::one() / &one_minus(Num::ratio(1, i64::from(q)), 1)
}
