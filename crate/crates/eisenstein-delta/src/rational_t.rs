//! Rational functions in one variable t with exact coefficients.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use fq_algebra::{Num, NumPoly};

use crate::error::EisError;

/// A reduced quotient N(t)/D(t) with D monic and gcd(N, D) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalT {
    num: NumPoly,
    den: NumPoly,
}

impl RationalT {
    /// N/D in reduced form; panics if D = 0.
    pub fn new(num: NumPoly, den: NumPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lead = d.leading().expect("nonzero").clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RationalT { num: n, den: d }
    }
    /// The polynomial p.
    pub fn from_poly(p: NumPoly) -> Self {
        RationalT { num: p, den: NumPoly::from_ints(&[1]) }
    }
    /// Integer coefficients, low degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_poly(NumPoly::from_ints(c))
    }
    /// A constant.
    pub fn constant(c: Num) -> Self {
        Self::from_poly(NumPoly::constant(c))
    }
    /// Zero.
    pub fn zero() -> Self {
        Self::from_poly(NumPoly::zero())
    }
    /// One.
    pub fn one() -> Self {
        Self::from_ints(&[1])
    }
    /// c t^k for any integer k.
    pub fn monomial(c: Num, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(NumPoly::monomial(c, k as usize))
        } else {
            Self::new(NumPoly::constant(c), NumPoly::monomial(Num::one(), (-k) as usize))
        }
    }
    /// t^k.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(Num::one(), k)
    }
    /// Numerator.
    pub fn numerator(&self) -> &NumPoly {
        &self.num
    }
    /// Monic denominator.
    pub fn denominator(&self) -> &NumPoly {
        &self.den
    }
    /// True for 0.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    /// True when the denominator is a power of t.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
    }

    /// Integer power (negative powers invert).
    pub fn pow(&self, e: i64) -> Result<Self, EisError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
    /// 1/R.
    pub fn inv(&self) -> Result<Self, EisError> {
        if self.is_zero() {
            return Err(EisError::DivisionByZero);
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    /// Multiplicity of the root x in the denominator.
    pub fn pole_order(&self, x: &Num) -> usize {
        let lin = NumPoly::new(vec![-x, Num::one()]);
        let mut d = self.den.clone();
        let mut k = 0;
        loop {
            let (qt, r) = d.div_rem(&lin);
            if !r.is_zero() {
                return k;
            }
            d = qt;
            k += 1;
        }
    }

    /// R(x); errors at a pole.
    pub fn eval(&self, x: &Num) -> Result<Num, EisError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(EisError::Pole(x.to_string()));
        }
        Ok(&self.num.eval(x) / &d)
    }

    /// The function t ↦ R(c/t).
    pub fn substitute_reciprocal(&self, c: &Num) -> Self {
        // t^a N(c/t) / (t^b D(c/t)) * t^(b-a)
        let flip = |p: &NumPoly| {
            let d = p.degree().unwrap_or(0);
            (p.scale_var(c).reversed(d), d as i64)
        };
        let (n, a) = flip(&self.num);
        let (d, b) = flip(&self.den);
        &Self::new(n, d) * &Self::t_pow(b - a)
    }

    /// The function t ↦ R(c t).
    pub fn scale_var(&self, c: &Num) -> Self {
        Self::new(self.num.scale_var(c), self.den.scale_var(c))
    }

    /// Laurent expansion at t = 0: `(k, c_k)` for k from the order of R up to `upto` inclusive.
    pub fn expansion(&self, upto: i64) -> Vec<(i64, Num)> {
        if self.is_zero() {
            return Vec::new();
        }
        let vn = self.num.t_adic_valuation();
        let vd = self.den.t_adic_valuation();
        let n = self.num.shift_down(vn);
        let d = self.den.shift_down(vd);
        let start = vn as i64 - vd as i64;
        if upto < start {
            return Vec::new();
        }
        let count = (upto - start + 1) as usize;
        n.series_div(&d, count).into_iter().enumerate().map(|(i, c)| (start + i as i64, c)).collect()
    }

    /// True if every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.num.coeffs().iter().chain(self.den.coeffs()).all(Num::is_rational)
    }
}

impl Add for &RationalT {
    type Output = RationalT;
    fn add(self, o: &RationalT) -> RationalT {
        if self.den == o.den {
            return RationalT::new(&self.num + &o.num, self.den.clone());
        }
        RationalT::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}
impl Sub for &RationalT {
    type Output = RationalT;
    fn sub(self, o: &RationalT) -> RationalT {
        self + &(-o)
    }
}
impl Mul for &RationalT {
    type Output = RationalT;
    fn mul(self, o: &RationalT) -> RationalT {
        RationalT::new(&self.num * &o.num, &self.den * &o.den)
    }
}
impl Div for &RationalT {
    type Output = RationalT;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RationalT) -> RationalT {
        self * &o.inv().expect("division of rational functions by zero")
    }
}
impl Neg for &RationalT {
    type Output = RationalT;
    fn neg(self) -> RationalT {
        RationalT { num: -&self.num, den: self.den.clone() }
    }
}
macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalT {
            type Output = RationalT;
            fn $m(self, o: RationalT) -> RationalT { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);
impl Neg for RationalT {
    type Output = RationalT;
    fn neg(self) -> RationalT {
        -&self
    }
}

impl fmt::Display for RationalT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
impl fmt::Debug for RationalT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalT({self})")
    }
}

impl Serialize for RationalT {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let strs = |p: &NumPoly| p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("RationalT", 2)?;
        st.serialize_field("numerator", &strs(&self.num))?;
        st.serialize_field("denominator", &strs(&self.den))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_compares() {
        let a = RationalT::new(NumPoly::from_ints(&[-1, 0, 1]), NumPoly::from_ints(&[-2, 2]));
        assert_eq!(a, RationalT::new(NumPoly::from_ints(&[1, 1]), NumPoly::from_ints(&[2])));
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(RationalT::t_pow(-2).expansion(0), vec![(-2, Num::one()), (-1, Num::zero()), (0, Num::zero())]);
    }

    #[test]
    fn reciprocal_substitution_is_an_involution() {
        let r = RationalT::new(NumPoly::from_ints(&[1, 3, 0, 2]), NumPoly::from_ints(&[1, -4, 0, 0, 1]));
        let c = Num::ratio(1, 3);
        assert_eq!(r.substitute_reciprocal(&c).substitute_reciprocal(&c), r);
        let x = Num::ratio(2, 5);
        assert_eq!(r.substitute_reciprocal(&c).eval(&x).unwrap(), r.eval(&(&c / &x)).unwrap());
    }

    #[test]
    fn poles_are_detected() {
        let r = RationalT::new(NumPoly::from_ints(&[1]), NumPoly::from_ints(&[1, -4, 4]));
        assert_eq!(r.pole_order(&Num::ratio(1, 2)), 2);
        assert!(r.eval(&Num::ratio(1, 2)).is_err());
        assert_eq!(r.eval(&Num::int(1)).unwrap(), Num::one());
    }
}
