//! Multiplicative number theory on A = F_q[T]: factorization by trial
//! division, Möbius function, divisors, gcd/lcm and enumeration helpers.

use crate::error::AlgebraError;
use crate::field::{Fe, Fq};
use crate::poly::PolyA;

/// Norm |a| = q^deg(a).
pub fn norm(a: &PolyA) -> Result<u64, AlgebraError> {
    a.norm()
}

/// All polynomials of degree < d (including zero), in canonical order of the
/// coefficient tuples.
pub fn polys_deg_lt(field: &'static Fq, d: usize) -> impl Iterator<Item = PolyA> {
    let q = u64::from(field.q());
    let total = q.pow(d as u32);
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push(field.elem((code % q) as u32));
            code /= q;
        }
        PolyA::new(field, v)
    })
}

/// All monic polynomials of degree exactly d.
pub fn monic_polys(field: &'static Fq, d: usize) -> impl Iterator<Item = PolyA> {
    polys_deg_lt(field, d).map(move |r| &r + &PolyA::monomial(field, Fe::ONE, d))
}

/// Irreducibility by trial division with monic polynomials of degree <= deg/2.
pub fn is_irreducible(a: &PolyA) -> bool {
    let Some(d) = a.degree() else { return false };
    if d == 0 {
        return false;
    }
    let f = a.field();
    !(1..=d / 2).any(|e| monic_polys(f, e).any(|m| a.divisible_by(&m)))
}

/// Monic irreducibles of degree d, canonical order.
pub fn primes_of_degree(field: &'static Fq, d: usize) -> Vec<PolyA> {
    monic_polys(field, d).filter(is_irreducible).collect()
}

/// Monic irreducibles with degree in `1..=max_deg`.
pub fn primes_up_to(field: &'static Fq, max_deg: usize) -> Vec<PolyA> {
    (1..=max_deg).flat_map(|d| primes_of_degree(field, d)).collect()
}

fn require_monic(a: &PolyA) -> Result<(), AlgebraError> {
    if a.is_monic() {
        Ok(())
    } else {
        Err(AlgebraError::NotMonic(a.to_string()))
    }
}

/// Monic prime factors with multiplicity, in canonical order.
pub fn factor(a: &PolyA) -> Result<Vec<PolyA>, AlgebraError> {
    require_monic(a)?;
    let f = a.field();
    let mut rest = a.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) > 0 {
        if 2 * d > rest.degree().unwrap_or(0) {
            out.push(rest.clone());
            break;
        }
        let mut found = false;
        for m in monic_polys(f, d) {
            // the smallest-degree divisor found this way is automatically irreducible
            while rest.divisible_by(&m) {
                rest = rest.quo(&m);
                out.push(m.clone());
                found = true;
            }
        }
        if !found || rest.degree().unwrap_or(0) < 2 * d {
            d += 1;
        }
    }
    out.sort();
    Ok(out)
}

/// Distinct prime factors if `a` is square-free, otherwise an error.
pub fn squarefree_primes(a: &PolyA) -> Result<Vec<PolyA>, AlgebraError> {
    let fs = factor(a)?;
    if fs.windows(2).any(|w| w[0] == w[1]) {
        return Err(AlgebraError::NotSquareFree(a.to_string()));
    }
    Ok(fs)
}

/// True if the monic polynomial `a` has no repeated factor.
pub fn is_squarefree(a: &PolyA) -> bool {
    squarefree_primes(a).is_ok()
}

/// Möbius function of a monic polynomial.
pub fn moebius(a: &PolyA) -> Result<i8, AlgebraError> {
    let fs = factor(a)?;
    if fs.windows(2).any(|w| w[0] == w[1]) {
        return Ok(0);
    }
    Ok(if fs.len() % 2 == 0 { 1 } else { -1 })
}

/// All 2^r monic divisors of a square-free monic polynomial, sorted canonically.
pub fn monic_divisors(a: &PolyA) -> Result<Vec<PolyA>, AlgebraError> {
    let primes = squarefree_primes(a)?;
    let mut divs = vec![PolyA::one(a.field())];
    for p in &primes {
        let more: Vec<PolyA> = divs.iter().map(|d| d * p).collect();
        divs.extend(more);
    }
    divs.sort();
    Ok(divs)
}

/// Monic gcd and lcm.
pub fn gcd_lcm(a: &PolyA, b: &PolyA) -> Result<(PolyA, PolyA), AlgebraError> {
    let g = a.gcd(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok((g, PolyA::zero(a.field())));
    }
    let l = (a * b).quo(&g).monic();
    Ok((g, l))
}
