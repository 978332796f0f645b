//! Fourier coefficients of cusp forms.
//!
//! The coefficients of depth D are a character transform of the values on the
//! edges `e(D+2, u)`, `u = u₁π + … + u_{D+1}π^{D+1}`. The additive character
//! takes values in the p-th roots of unity, so the transform is computed in
//! the group ring of Z/p and collapsed to the coefficient field at the end,
//! which is possible exactly when all non-trivial classes carry equal weight.

use std::collections::BTreeMap;

use rayon::prelude::*;

use bruhat_tits::{Edge, Vertex};
use fq_algebra::{arith, LaurentK, Num, PolyA};

use crate::eigen::Newform;
use crate::error::FormsError;
use crate::space::{Cochain, CuspSpace};

/// A divisor `m · ∞^inf` with m monic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Divisor {
    /// The finite part.
    pub finite: PolyA,
    /// Multiplicity of the place at infinity.
    pub inf: u32,
}

impl Divisor {
    /// `m · ∞^inf`.
    pub fn new(finite: PolyA, inf: u32) -> Self {
        Divisor { finite, inf }
    }
    /// Total degree.
    pub fn degree(&self) -> usize {
        self.finite.degree().unwrap_or(0) + self.inf as usize
    }
}

/// `c(f, m·∞^{d - deg m})` for every monic m of degree ≤ d.
pub fn fourier_table(space: &CuspSpace, f: &Cochain, d: usize) -> Result<Vec<(PolyA, Num)>, FormsError> {
    let field = space.level().field();
    let q = field.q() as usize;
    let p = field.p() as usize;
    let width = d + 1;
    let size = q.pow(width as u32);
    let digits_of = |mut code: usize| -> Vec<u32> {
        (0..width)
            .map(|_| {
                let x = (code % q) as u32;
                code /= q;
                x
            })
            .collect()
    };
    let values: Vec<Num> = (0..size)
        .into_par_iter()
        .map(|code| {
            let u: Vec<_> = digits_of(code).into_iter().map(|x| field.elem(x)).collect();
            let u = LaurentK::from_coeffs(field, 1, u);
            let e = Edge::new(Vertex::new(d as i64 + 2, &u), true);
            space.value_at(f, &e)
        })
        .collect::<Result<_, _>>()?;

    // trace class of -m*u for m, u in F_q
    let tr: Vec<Vec<usize>> = (0..q as u32)
        .map(|m| {
            (0..q as u32)
                .map(|u| field.trace(field.neg(field.mul(field.elem(m), field.elem(u)))) as usize)
                .collect()
        })
        .collect();

    let mut ring: Vec<Vec<Num>> = values
        .into_iter()
        .map(|v| {
            let mut x = vec![Num::zero(); p];
            x[0] = v;
            x
        })
        .collect();
    let mut stride = 1;
    for _ in 0..width {
        let mut next = vec![vec![Num::zero(); p]; size];
        for base in 0..size {
            if (base / stride) % q != 0 {
                continue;
            }
            for m in 0..q {
                let out = &mut next[base + m * stride];
                for u in 0..q {
                    let src = &ring[base + u * stride];
                    let shift = tr[m][u];
                    for (j, s) in src.iter().enumerate() {
                        if !s.is_zero() {
                            let k = (j + shift) % p;
                            out[k] = &out[k] + s;
                        }
                    }
                }
            }
        }
        ring = next;
        stride *= q;
    }

    let scale = Num::ratio(1, q.pow(width as u32) as i64);
    let mut out = Vec::new();
    for (code, classes) in ring.into_iter().enumerate() {
        let m = PolyA::from_indices(field, &digits_of(code));
        if m.is_zero() || !m.is_monic() {
            continue;
        }
        if classes[1..].iter().any(|c| *c != classes[1]) {
            return Err(FormsError::CharacterSumNotInField);
        }
        out.push((m, &(&classes[0] - &classes[1]) * &scale));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// `c(f, m)` for every monic m with deg m ≤ d, from a single transform.
pub fn coefficients_up_to(space: &CuspSpace, f: &Cochain, d: usize) -> Result<BTreeMap<PolyA, Num>, FormsError> {
    let q = i64::from(space.level().field().q());
    fourier_table(space, f, d)?
        .into_iter()
        .map(|(m, c)| {
            let shift = d - m.degree().unwrap_or(0);
            Ok((m, &c * &Num::int(q).pow(shift as i64)))
        })
        .collect()
}

/// `c(f, 𝔪)` straight from the cochain values.
pub fn coefficient(space: &CuspSpace, f: &Cochain, div: &Divisor) -> Result<Num, FormsError> {
    let table = fourier_table(space, f, div.degree())?;
    Ok(table
        .into_iter()
        .find(|(m, _)| *m == div.finite)
        .map(|(_, c)| c)
        .expect("monic divisors are all tabulated"))
}

/// `c(f, 1)`.
pub fn first_coefficient(space: &CuspSpace, f: &Cochain) -> Result<Num, FormsError> {
    coefficient(space, f, &Divisor::new(PolyA::one(space.level().field()), 0))
}

/// `c(f, 𝔪)` for a normalized newform, from its Hecke eigenvalues:
/// multiplicative in m, `c(∞^j 𝔪) = q^{-j} c(𝔪)` and a two-term
/// recursion in powers of each prime.
pub fn newform_coefficient(nf: &Newform, div: &Divisor) -> Result<Num, FormsError> {
    if div.finite.is_zero() || !div.finite.is_monic() {
        return Err(FormsError::NotPrime(div.finite.to_string()));
    }
    let q = i64::from(div.finite.field().q());
    let mut acc = Num::int(q).pow(-i64::from(div.inf));
    let primes = arith::factor(&div.finite)?;
    let mut i = 0;
    while i < primes.len() {
        let p = &primes[i];
        let e = primes[i..].iter().take_while(|x| *x == p).count();
        acc = &acc * &prime_power_coefficient(nf, p, e)?;
        i += e;
    }
    Ok(acc)
}

fn prime_power_coefficient(nf: &Newform, p: &PolyA, e: usize) -> Result<Num, FormsError> {
    let norm = Num::int(p.norm()? as i64);
    let lambda = nf.eigenvalue(p)?;
    let bad = nf.level().divisible_by(p);
    let inv_norm = norm.inv().expect("norm is positive");
    let mut prev = Num::one();
    let mut cur = &lambda * &inv_norm;
    if e == 0 {
        return Ok(prev);
    }
    for _ in 1..e {
        let mut next = &lambda * &cur;
        if !bad {
            next = &next - &prev;
        }
        let next = &next * &inv_norm;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
