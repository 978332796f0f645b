//! Factorization of monic integer polynomials.
//!
//! Square-free decomposition over Q, then Cantor-Zassenhaus modulo a Mersenne
//! prime exceeding twice the Mignotte bound, then recombination of modular
//! factors by trial division over Z. Lifting is unnecessary because the prime
//! already dominates every coefficient of every true factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use fq_algebra::{Num, NumPoly};

use crate::error::FormsError;

/// Mersenne exponents giving primes; the first whose prime beats the bound is used.
const MERSENNE_EXPONENTS: [u32; 8] = [61, 89, 107, 127, 521, 607, 1279, 2203];

type ZPoly = Vec<BigInt>;

fn trim(v: &mut ZPoly) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Integer coefficients of a monic polynomial with integral rational coefficients.
pub fn to_integer_poly(p: &NumPoly) -> Result<ZPoly, FormsError> {
    p.coeffs()
        .iter()
        .map(|c| {
            let r = c.to_rational().ok_or(FormsError::NonIntegralCharpoly(p.to_string()))?;
            if !r.is_integer() {
                return Err(FormsError::NonIntegralCharpoly(p.to_string()));
            }
            Ok(r.to_integer())
        })
        .collect()
}

/// Back to a [`NumPoly`].
pub fn from_integer_poly(p: &[BigInt]) -> NumPoly {
    NumPoly::new(p.iter().map(|c| Num::bigint(c.clone())).collect())
}

/// Monic irreducible factors over Z with multiplicities, sorted by degree then coefficients.
pub fn factor_monic(p: &NumPoly) -> Result<Vec<(NumPoly, usize)>, FormsError> {
    if p.leading().map_or(true, |l| !l.is_one()) {
        return Err(FormsError::NonIntegralCharpoly(p.to_string()));
    }
    to_integer_poly(p)?;
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        if part.degree() == Some(0) {
            continue;
        }
        for g in factor_squarefree(&to_integer_poly(&part)?)? {
            out.push((from_integer_poly(&g), mult));
        }
    }
    out.sort_by(|a, b| {
        let ka: Vec<String> = a.0.coeffs().iter().map(|c| c.to_string()).collect();
        let kb: Vec<String> = b.0.coeffs().iter().map(|c| c.to_string()).collect();
        (a.0.degree(), ka).cmp(&(b.0.degree(), kb))
    });
    Ok(out)
}

/// Yun's algorithm over Q: monic square-free parts with multiplicities.
fn squarefree_decomposition(p: &NumPoly) -> Vec<(NumPoly, usize)> {
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        out.push((a.monic(), i));
        i += 1;
    }
    out
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let norm2_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm2 = norm2_sq.sqrt() + BigInt::one();
    let n = f.len() - 1;
    (BigInt::one() << n) * norm2
}

/// Arithmetic in F_p[x] with big-integer coefficients.
struct ModP {
    p: BigInt,
}

impl ModP {
    fn norm(&self, mut v: ZPoly) -> ZPoly {
        for c in v.iter_mut() {
            *c = c.mod_floor(&self.p);
        }
        trim(&mut v);
        v
    }
    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> ZPoly {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect();
        self.norm(v)
    }
    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> ZPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        self.norm(v)
    }
    fn inv(&self, a: &BigInt) -> BigInt {
        a.modpow(&(&self.p - 2u32), &self.p)
    }
    fn divrem(&self, a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly) {
        let db = b.len() - 1;
        let li = self.inv(&b[db]);
        let mut r = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        while r.len() > db {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let k = (lead * &li).mod_floor(&self.p);
            let s = r.len() - db;
            for i in 0..db {
                r[s + i] = (&r[s + i] - &k * &b[i]).mod_floor(&self.p);
            }
            q[s] = k;
        }
        trim(&mut r);
        (self.norm(q), r)
    }
    fn rem(&self, a: &[BigInt], m: &[BigInt]) -> ZPoly {
        self.divrem(a, m).1
    }
    fn monic(&self, a: &[BigInt]) -> ZPoly {
        let li = self.inv(a.last().unwrap());
        self.norm(a.iter().map(|c| c * &li).collect())
    }
    fn gcd(&self, a: &[BigInt], b: &[BigInt]) -> ZPoly {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        if x.is_empty() {
            x
        } else {
            self.monic(&x)
        }
    }
    fn powmod(&self, base: &[BigInt], e: &BigInt, m: &[BigInt]) -> ZPoly {
        let mut acc = vec![BigInt::one()];
        let b = self.rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
        }
        acc
    }
    fn derivative(&self, a: &[BigInt]) -> ZPoly {
        self.norm(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }
}

fn factor_squarefree(f: &[BigInt]) -> Result<Vec<ZPoly>, FormsError> {
    let n = f.len() - 1;
    if n == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let bound = mignotte_bound(f);
    for &e in &MERSENNE_EXPONENTS {
        let p: BigInt = (BigInt::one() << e) - 1;
        if p <= &bound * 2 {
            continue;
        }
        let fp = ModP { p: p.clone() };
        let fm = fp.norm(f.to_vec());
        if fp.gcd(&fm, &fp.derivative(&fm)).len() != 1 {
            continue; // not square-free modulo this prime
        }
        let modular = cantor_zassenhaus(&fp, &fm);
        return Ok(recombine(f, &modular, &p));
    }
    Err(FormsError::FactorBoundExceeded(n))
}

fn cantor_zassenhaus(fp: &ModP, f: &[BigInt]) -> Vec<ZPoly> {
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut rest = f.to_vec();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.len() > 2 * d {
        h = fp.powmod(&h, &fp.p, &rest);
        let g = fp.gcd(&rest, &fp.sub(&h, &x));
        if g.len() > 1 {
            equal_degree(fp, &g, d, &mut out);
            rest = fp.divrem(&rest, &g).0;
            h = fp.rem(&h, &rest);
        }
        d += 1;
    }
    if rest.len() > 1 {
        out.push(fp.monic(&rest));
    }
    out
}

fn equal_degree(fp: &ModP, g: &[BigInt], d: usize, out: &mut Vec<ZPoly>) {
    if g.len() - 1 == d {
        out.push(g.to_vec());
        return;
    }
    let e: BigInt = (fp.p.pow(d as u32) - 1u32) / 2u32;
    let mut c = BigInt::zero();
    loop {
        // deterministic probes x + c; each splits with probability about 1/2
        let a = vec![c.clone(), BigInt::one()];
        let b = fp.sub(&fp.powmod(&a, &e, g), &[BigInt::one()]);
        let h = fp.gcd(g, &b);
        if h.len() > 1 && h.len() < g.len() {
            let other = fp.divrem(g, &h).0;
            equal_degree(fp, &h, d, out);
            equal_degree(fp, &other, d, out);
            return;
        }
        c += 1;
    }
}

fn symmetric(v: &[BigInt], p: &BigInt) -> ZPoly {
    let half: BigInt = p / 2u32;
    v.iter()
        .map(|c| {
            let c = c.mod_floor(p);
            if c > half {
                c - p
            } else {
                c
            }
        })
        .collect()
}

/// Exact division of integer polynomials by a monic divisor.
fn zdiv_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let lead = r.pop().unwrap();
        let s = r.len() - db;
        for i in 0..db {
            r[s + i] -= &lead * &b[i];
        }
        q[s] = lead;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

fn recombine(f: &[BigInt], modular: &[ZPoly], p: &BigInt) -> Vec<ZPoly> {
    let fp = ModP { p: p.clone() };
    let mut remaining: Vec<ZPoly> = modular.to_vec();
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in subsets(remaining.len(), s) {
            let prod = subset.iter().fold(vec![BigInt::one()], |acc, &i| fp.mul(&acc, &remaining[i]));
            let g = symmetric(&prod, p);
            if let Some(q) = zdiv_monic(&f, &g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f = q;
                remaining = remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, x)| x).collect();
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// True for a monic polynomial with integer coefficients.
pub fn is_monic_integer(p: &NumPoly) -> bool {
    p.leading().is_some_and(Num::is_one) && to_integer_poly(p).is_ok()
}
