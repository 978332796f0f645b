//! Polynomials in A = F_q[T].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::AlgebraError;
use crate::field::{Fe, Fq};

/// An element of F_q[T], coefficients stored from the constant term upward.
///
/// The coefficient vector never ends in a zero, so the zero polynomial has no
/// coefficients. Ordering is the canonical one: degree first, then the
/// coefficient tuple read from the constant term.
#[derive(Clone)]
pub struct PolyA {
    field: &'static Fq,
    coeffs: Vec<Fe>,
}

impl PolyA {
    /// Builds a polynomial, trimming trailing zeros.
    pub fn new(field: &'static Fq, mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyA { field, coeffs }
    }

    /// Builds a polynomial from integer coefficients (reduced into the prime field).
    pub fn from_ints(field: &'static Fq, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Builds a polynomial from table indices of F_q elements.
    pub fn from_indices(field: &'static Fq, coeffs: &[u32]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero(field: &'static Fq) -> Self {
        PolyA { field, coeffs: Vec::new() }
    }
    /// The constant 1.
    pub fn one(field: &'static Fq) -> Self {
        Self::constant(field, Fe::ONE)
    }
    /// A constant polynomial.
    pub fn constant(field: &'static Fq, c: Fe) -> Self {
        Self::new(field, vec![c])
    }
    /// The variable T.
    pub fn t(field: &'static Fq) -> Self {
        Self::monomial(field, Fe::ONE, 1)
    }
    /// `c * T^k`.
    pub fn monomial(field: &'static Fq, c: Fe, k: usize) -> Self {
        let mut v = vec![Fe::ZERO; k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    /// The coefficient field.
    pub fn field(&self) -> &'static Fq {
        self.field
    }
    /// Coefficients from the constant term upward.
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }
    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }
    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    /// Degree with the convention deg 0 = -1, handy for size bounds.
    pub fn deg_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }
    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// True for the constant 1.
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }
    /// Leading coefficient, zero for the zero polynomial.
    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }
    /// True if the leading coefficient is 1.
    pub fn is_monic(&self) -> bool {
        self.leading() == Fe::ONE
    }

    /// Scales to a monic polynomial (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: Fe) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    /// Multiplies by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        PolyA { field: self.field, coeffs: v }
    }

    /// Evaluation at a point of F_q.
    pub fn eval(&self, x: Fe) -> Fe {
        let f = self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, d: &PolyA) -> Result<(PolyA, PolyA), AlgebraError> {
        let f = self.field;
        let dl = f.inv(d.leading()).ok_or(AlgebraError::DivisionByZero)?;
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((PolyA::zero(f), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut quo = vec![Fe::ZERO; r.len() - dn + 1];
        for s in (0..quo.len()).rev() {
            let c = f.mul(r[s + dn - 1], dl);
            quo[s] = c;
            if !c.is_zero() {
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[s + i] = f.sub(r[s + i], f.mul(c, dc));
                }
            }
        }
        r.truncate(dn - 1);
        Ok((PolyA::new(f, quo), PolyA::new(f, r)))
    }

    /// Remainder modulo `d`; panics if `d` is zero.
    pub fn rem(&self, d: &PolyA) -> PolyA {
        self.div_rem(d).expect("remainder by zero polynomial").1
    }

    /// Exact quotient; panics if `d` is zero.
    pub fn quo(&self, d: &PolyA) -> PolyA {
        self.div_rem(d).expect("division by zero polynomial").0
    }

    /// True if `d` divides `self` (`d` nonzero).
    pub fn divisible_by(&self, d: &PolyA) -> bool {
        self.rem(d).is_zero()
    }

    /// Monic gcd; errors when both inputs vanish.
    pub fn gcd(&self, other: &PolyA) -> Result<PolyA, AlgebraError> {
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &PolyA) -> Result<(PolyA, PolyA, PolyA), AlgebraError> {
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyA::one(f), PolyA::zero(f));
        let (mut t0, mut t1) = (PolyA::zero(f), PolyA::one(f));
        while !r1.is_zero() {
            let (qq, rr) = r0.div_rem(&r1)?;
            let s2 = &s0 - &(&qq * &s1);
            let t2 = &t0 - &(&qq * &t1);
            r0 = std::mem::replace(&mut r1, rr);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let c = f.inv(r0.leading()).expect("nonzero gcd");
        Ok((r0.scale(c), s0.scale(c), t0.scale(c)))
    }

    /// Inverse modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &PolyA) -> Option<PolyA> {
        let (g, s, _) = self.xgcd(m).ok()?;
        g.is_one().then(|| s.rem(m))
    }

    /// Norm |a| = q^deg a; errors for zero.
    pub fn norm(&self) -> Result<u64, AlgebraError> {
        let d = self.degree().ok_or(AlgebraError::NormOfZero)?;
        u64::from(self.field.q())
            .checked_pow(d as u32)
            .ok_or(AlgebraError::Overflow("polynomial norm"))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> PolyA {
        let f = self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
            .collect();
        PolyA::new(f, v)
    }

    /// Integer power.
    pub fn pow(&self, mut e: u32) -> PolyA {
        let mut base = self.clone();
        let mut acc = PolyA::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check_field(&self, other: &PolyA) {
        assert!(
            std::ptr::eq(self.field, other.field),
            "mixing polynomials over F_{} and F_{}",
            self.field.q(),
            other.field.q()
        );
    }
}

impl PartialEq for PolyA {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.coeffs == other.coeffs
    }
}
impl Eq for PolyA {}

impl Hash for PolyA {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for PolyA {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}
impl PartialOrd for PolyA {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &PolyA {
    type Output = PolyA;
    fn add(self, rhs: &PolyA) -> PolyA {
        self.check_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyA::new(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}
impl Sub for &PolyA {
    type Output = PolyA;
    fn sub(self, rhs: &PolyA) -> PolyA {
        self.check_field(rhs);
        let f = self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyA::new(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}
impl Mul for &PolyA {
    type Output = PolyA;
    fn mul(self, rhs: &PolyA) -> PolyA {
        self.check_field(rhs);
        let f = self.field;
        if self.is_zero() || rhs.is_zero() {
            return PolyA::zero(f);
        }
        let mut v = vec![Fe::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        PolyA::new(f, v)
    }
}
impl Neg for &PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        let f = self.field;
        PolyA::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}
macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyA {
            type Output = PolyA;
            fn $m(self, rhs: PolyA) -> PolyA {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PolyA> for PolyA {
            type Output = PolyA;
            fn $m(self, rhs: &PolyA) -> PolyA {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
impl Neg for PolyA {
    type Output = PolyA;
    fn neg(self) -> PolyA {
        -&self
    }
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            match (i, *c == Fe::ONE) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyA[F_{}]({})", self.field.q(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    q: u32,
    coeffs: Vec<u32>,
}

impl Serialize for PolyA {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyWire { q: self.field.q(), coeffs: self.coeffs.iter().map(|c| c.index()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyA {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        let field = Fq::new(w.q).map_err(serde::de::Error::custom)?;
        if let Some(bad) = w.coeffs.iter().find(|&&c| c >= w.q) {
            return Err(serde::de::Error::custom(format!("coefficient {bad} outside F_{}", w.q)));
        }
        Ok(PolyA::from_indices(field, &w.coeffs))
    }
}
