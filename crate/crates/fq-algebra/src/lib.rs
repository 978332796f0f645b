//! Arithmetic foundations: finite fields F_q, the polynomial ring A = F_q[T],
//! the completion K_∞ = F_q((1/T)) with precision tracking, and exact
//! characteristic-zero scalars (rationals and number fields).

pub mod arith;
mod error;
pub mod exact;
mod field;
pub mod laurent;
mod parse;
mod poly;

pub use arith::{factor, gcd_lcm, is_irreducible, is_squarefree, moebius, monic_divisors, norm, primes_of_degree, primes_up_to};
pub use error::AlgebraError;
pub use exact::{Num, NumPoly, NumberField};
pub use field::{prime_power, Fe, Fq};
pub use laurent::{embed_k, LaurentK};
pub use parse::parse_poly;
pub use poly::PolyA;
