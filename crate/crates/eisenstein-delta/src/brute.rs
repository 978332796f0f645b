//! Direct enumeration of the Eisenstein double sums, truncated in t-degree.
//!
//! For a vertex v(k,u) each coprime pair (m, n), m monic, contributes
//! t^{2 deg m - k} when ω = ord(mu + n) ≥ k - deg m and t^{k - 2ω} otherwise;
//! the edge series uses -t^{2 deg m - k + 1} in the first case. Only finitely
//! many pairs contribute below a fixed t-degree, so the truncation is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use bruhat_tits::Vertex;
use fq_algebra::{arith, LaurentK, PolyA};

use crate::error::EisError;

/// Which double sum to enumerate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// E(v, s).
    Vertex,
    /// F(e, s) on the positive edge with origin v.
    PositiveEdge,
}

/// Coefficients of t^e, e ≤ `order`, of the chosen series at v.
///
/// With `divisor = Some(I)` only pairs with I | m are kept, which gives the
/// Γ₀(I) series summed over Γ_∞\Γ₀(I).
pub fn truncated_series(
    v: &Vertex,
    order: i64,
    kind: SeriesKind,
    divisor: Option<&PolyA>,
) -> Result<BTreeMap<i64, BigInt>, EisError> {
    let f = v.field();
    let k = v.k();
    let u = v.u().clone();
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut add = |e: i64, c: i64| {
        if e <= order {
            *out.entry(e).or_insert_with(BigInt::zero) += c;
        }
    };
    add(k, 1);
    let max_dm = (order + k).div_euclid(2) + 1;
    for dm in 0..=max_dm.max(-1) {
        let dm_u = dm as usize;
        for m in arith::monic_polys(f, dm_u) {
            if divisor.is_some_and(|d| !m.divisible_by(d)) {
                continue;
            }
            let mu = &LaurentK::from_poly(&m) * &u;
            let (poly_part, frac) = mu.split_polynomial_part();
            let frac_ord = frac.valuation()?;
            let rd = (order - k).div_euclid(2).max(dm - k);
            for dr in -1..=rd {
                let rs: Vec<PolyA> = if dr < 0 {
                    vec![PolyA::zero(f)]
                } else {
                    arith::polys_deg_lt(f, dr as usize + 1).filter(|r| r.degree() == Some(dr as usize)).collect()
                };
                for r in rs {
                    let n = &r - &poly_part;
                    let coprime = if n.is_zero() { dm == 0 } else { m.gcd(&n)?.is_one() };
                    if !coprime {
                        continue;
                    }
                    // mu + n = frac + r
                    let w = if r.is_zero() { frac_ord } else { Some(-(dr)) };
                    let first = w.map_or(true, |w| w >= k - dm);
                    match (first, kind) {
                        (true, SeriesKind::Vertex) => add(2 * dm - k, 1),
                        (true, SeriesKind::PositiveEdge) => add(2 * dm - k + 1, -1),
                        (false, _) => add(k - 2 * w.expect("finite order"), 1),
                    }
                }
            }
        }
    }
    // the edge series starts with sgn(e) t^k for the identity coset, already added
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Σ c_e x^e over the truncated coefficients.
pub fn partial_sum(coeffs: &BTreeMap<i64, BigInt>, x: &BigRational) -> BigRational {
    coeffs.iter().fold(BigRational::zero(), |acc, (&e, c)| {
        let p = if e >= 0 { x.pow(e as i32) } else { x.recip().pow((-e) as i32) };
        acc + p * BigRational::from_integer(c.clone())
    })
}

/// Upper bound for the dropped terms e > `order` at s = 3 (t = q^{-3}), valid for `order ≥ k`:
/// the number of pairs with exponent e is at most q^{e+2}/(q-1).
pub fn tail_bound_at_s3(q: u32, order: i64, level: i64) -> Result<BigRational, EisError> {
    if order < level {
        return Err(EisError::TruncationTooShort { order, level });
    }
    let q = BigRational::from_integer(q.into());
    let one = BigRational::one();
    let q2 = &q * &q;
    let lead = &q2 / (&q - &one);
    let decay = q2.recip().pow((order + 1) as i32);
    Ok(lead * decay / (one - q2.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{eisenstein_e, ray_f};
    use bruhat_tits::Edge;
    use fq_algebra::{Fq, Num};

    #[test]
    fn origin_series_matches_closed_form() {
        let f = Fq::new(2).unwrap();
        let v = Vertex::origin(f);
        let brute = truncated_series(&v, 8, SeriesKind::Vertex, None).unwrap();
        let closed = eisenstein_e(&v).unwrap().expansion(8);
        for (e, c) in closed {
            let b = brute.get(&e).cloned().unwrap_or_default();
            assert_eq!(Num::bigint(b), c, "t^{e}");
        }
        let brute = truncated_series(&v, 8, SeriesKind::PositiveEdge, None).unwrap();
        let closed = ray_f(2, 0).expansion(8);
        assert_eq!(Edge::new(v, true), Edge::ray(f, 0));
        for (e, c) in closed {
            let b = brute.get(&e).cloned().unwrap_or_default();
            assert_eq!(Num::bigint(b), c, "t^{e}");
        }
    }
}
