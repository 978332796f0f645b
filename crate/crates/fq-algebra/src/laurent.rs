//! Laurent series in the uniformizer π = 1/T of K_∞ = F_q((π)).
//!
//! A value stores a window of coefficients and an optional precision: when
//! `prec = Some(N)` only the coefficients of exponents `< N` are known and any
//! request beyond that fails. `prec = None` marks an exact finite Laurent
//! polynomial, which is what every matrix entry and vertex residue is.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::field::{Fe, Fq};
use crate::poly::PolyA;

/// Element of K_∞ with tracked precision.
#[derive(Clone)]
pub struct LaurentK {
    field: &'static Fq,
    ord: i64,
    coeffs: Vec<Fe>,
    prec: Option<i64>,
}

impl LaurentK {
    fn normalized(field: &'static Fq, mut ord: i64, mut coeffs: Vec<Fe>, prec: Option<i64>) -> Self {
        if let Some(p) = prec {
            let keep = (p - ord).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return LaurentK { field, ord: 0, coeffs: Vec::new(), prec };
        }
        coeffs.drain(..lead);
        ord += lead as i64;
        LaurentK { field, ord, coeffs, prec }
    }

    /// Builds an exact value from coefficients of π^ord, π^(ord+1), ...
    pub fn from_coeffs(field: &'static Fq, ord: i64, coeffs: Vec<Fe>) -> Self {
        Self::normalized(field, ord, coeffs, None)
    }

    /// Builds a value known only below exponent `prec`.
    pub fn with_precision(field: &'static Fq, ord: i64, coeffs: Vec<Fe>, prec: i64) -> Self {
        Self::normalized(field, ord, coeffs, Some(prec))
    }

    /// Exact zero.
    pub fn zero(field: &'static Fq) -> Self {
        LaurentK { field, ord: 0, coeffs: Vec::new(), prec: None }
    }
    /// Exact one.
    pub fn one(field: &'static Fq) -> Self {
        Self::monomial(field, Fe::ONE, 0)
    }
    /// `c π^e`, exact.
    pub fn monomial(field: &'static Fq, c: Fe, e: i64) -> Self {
        Self::normalized(field, e, vec![c], None)
    }

    /// The image of a polynomial in T (exact): T^i becomes π^(-i).
    pub fn from_poly(a: &PolyA) -> Self {
        let f = a.field();
        match a.degree() {
            None => Self::zero(f),
            Some(d) => {
                let coeffs = (0..=d).rev().map(|i| a.coeff(i)).collect();
                Self::normalized(f, -(d as i64), coeffs, None)
            }
        }
    }

    /// The coefficient field.
    pub fn field(&self) -> &'static Fq {
        self.field
    }
    /// Precision bound, `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        self.prec
    }
    /// True when every coefficient is known.
    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }
    /// True when no nonzero coefficient is known. For exact values this is equality with 0.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// ord_∞: exponent of the lowest nonzero coefficient. `Ok(None)` is the
    /// exact zero; an inexact value with no known nonzero coefficient errors.
    pub fn valuation(&self) -> Result<Option<i64>, AlgebraError> {
        if !self.coeffs.is_empty() {
            return Ok(Some(self.ord));
        }
        match self.prec {
            None => Ok(None),
            Some(p) => Err(AlgebraError::Precision { needed: p + 1, known: p }),
        }
    }

    /// Valuation of an exact nonzero value; panics otherwise.
    pub fn ord(&self) -> i64 {
        assert!(!self.coeffs.is_empty(), "valuation of zero");
        self.ord
    }

    /// Coefficient of π^e.
    pub fn coeff(&self, e: i64) -> Result<Fe, AlgebraError> {
        if let Some(p) = self.prec {
            if e >= p {
                return Err(AlgebraError::Precision { needed: e + 1, known: p });
            }
        }
        Ok(self.coeff_unchecked(e))
    }

    fn coeff_unchecked(&self, e: i64) -> Fe {
        if e < self.ord {
            return Fe::ZERO;
        }
        self.coeffs.get((e - self.ord) as usize).copied().unwrap_or(Fe::ZERO)
    }

    /// Highest exponent carrying a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.ord + self.coeffs.len() as i64 - 1)
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fe)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, &c)| (self.ord + i as i64, c))
    }

    /// The exact representative of `self mod π^k O_∞` (coefficients below k).
    /// Errors if a needed coefficient is unknown.
    pub fn truncated(&self, k: i64) -> Result<Self, AlgebraError> {
        if let Some(p) = self.prec {
            if p < k {
                return Err(AlgebraError::Precision { needed: k, known: p });
            }
        }
        let keep = (k - self.ord).clamp(0, self.coeffs.len() as i64) as usize;
        Ok(Self::normalized(self.field, self.ord, self.coeffs[..keep].to_vec(), None))
    }

    /// Restricts the known window to exponents below `p` (never raises precision).
    pub fn limit_precision(&self, p: i64) -> Self {
        let np = Some(self.prec.map_or(p, |old| old.min(p)));
        Self::normalized(self.field, self.ord, self.coeffs.clone(), np)
    }

    /// Terms with exponent <= 0 as a polynomial in T, and the remaining terms.
    pub fn split_polynomial_part(&self) -> (PolyA, Self) {
        let f = self.field;
        let mut poly = Vec::new();
        let mut frac = Vec::new();
        for (e, c) in self.terms() {
            if e <= 0 {
                let i = (-e) as usize;
                if poly.len() <= i {
                    poly.resize(i + 1, Fe::ZERO);
                }
                poly[i] = c;
            } else {
                frac.push((e, c));
            }
        }
        let frac_val = if frac.is_empty() {
            LaurentK { field: f, ord: 0, coeffs: Vec::new(), prec: self.prec }
        } else {
            let o = frac[0].0;
            let mut v = vec![Fe::ZERO; (frac.last().unwrap().0 - o + 1) as usize];
            for (e, c) in frac {
                v[(e - o) as usize] = c;
            }
            Self::normalized(f, o, v, self.prec)
        };
        (PolyA::new(f, poly), frac_val)
    }

    /// If exact with all exponents <= 0, the corresponding polynomial in T.
    pub fn as_poly(&self) -> Option<PolyA> {
        if !self.is_exact() || self.top().is_some_and(|t| t > 0) {
            return None;
        }
        Some(self.split_polynomial_part().0)
    }

    /// Multiplication by π^e.
    pub fn shift(&self, e: i64) -> Self {
        LaurentK {
            field: self.field,
            ord: if self.coeffs.is_empty() { 0 } else { self.ord + e },
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + e),
        }
    }

    /// Multiplication by a constant.
    pub fn scale(&self, c: Fe) -> Self {
        let f = self.field;
        Self::normalized(f, self.ord, self.coeffs.iter().map(|&x| f.mul(x, c)).collect(), self.prec)
    }

    /// Quotient `self / den`, returning the coefficients of exponents below `prec`.
    /// Fails if `den` is zero or either operand lacks the needed coefficients.
    pub fn div_to(&self, den: &LaurentK, prec: i64) -> Result<Self, AlgebraError> {
        let f = self.field;
        let v = den.valuation()?.ok_or(AlgebraError::DivisionByZero)?;
        let nv = match self.valuation() {
            Ok(Some(nv)) => nv,
            Ok(None) => return Ok(Self::zero(f).limit_precision(prec)),
            Err(e) => {
                // unknown numerator: the quotient is known below num.prec - v
                let known = self.prec.unwrap_or(i64::MAX) - v;
                if known >= prec {
                    return Ok(LaurentK { field: f, ord: 0, coeffs: Vec::new(), prec: Some(prec) });
                }
                return Err(e);
            }
        };
        let start = nv - v;
        let n = prec - start;
        if n <= 0 {
            return Ok(LaurentK { field: f, ord: 0, coeffs: Vec::new(), prec: Some(prec) });
        }
        // numerator needs exponents < nv + n, denominator exponents < v + n
        if let Some(p) = self.prec {
            if p < nv + n {
                return Err(AlgebraError::Precision { needed: nv + n, known: p });
            }
        }
        if let Some(p) = den.prec {
            if p < v + n {
                return Err(AlgebraError::Precision { needed: v + n, known: p });
            }
        }
        let n = n as usize;
        let d0 = f.inv(den.coeff_unchecked(v)).expect("leading coefficient is nonzero");
        let du: Vec<Fe> = (0..n).map(|i| den.coeff_unchecked(v + i as i64)).collect();
        let mut rem: Vec<Fe> = (0..n).map(|i| self.coeff_unchecked(nv + i as i64)).collect();
        let mut out = vec![Fe::ZERO; n];
        for i in 0..n {
            let c = f.mul(rem[i], d0);
            out[i] = c;
            if !c.is_zero() {
                for j in i..n {
                    rem[j] = f.sub(rem[j], f.mul(c, du[j - i]));
                }
            }
        }
        Ok(Self::normalized(f, start, out, Some(prec)))
    }

    /// Forgets the precision bound; only for values known to be exact.
    pub fn assume_exact(mut self) -> Self {
        self.prec = None;
        self
    }

    fn combine(&self, rhs: &LaurentK, sign: bool) -> LaurentK {
        assert!(std::ptr::eq(self.field, rhs.field), "mixing fields in LaurentK");
        let f = self.field;
        let prec = match (self.prec, rhs.prec) {
            (None, p) | (p, None) => p,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        if self.coeffs.is_empty() {
            let r = if sign { rhs.clone() } else { -rhs };
            return Self::normalized(f, r.ord, r.coeffs, prec);
        }
        if rhs.coeffs.is_empty() {
            return Self::normalized(f, self.ord, self.coeffs.clone(), prec);
        }
        let lo = self.ord.min(rhs.ord);
        let hi = self.top().unwrap().max(rhs.top().unwrap());
        let v = (lo..=hi)
            .map(|e| {
                let b = rhs.coeff_unchecked(e);
                f.add(self.coeff_unchecked(e), if sign { b } else { f.neg(b) })
            })
            .collect();
        Self::normalized(f, lo, v, prec)
    }
}

impl PartialEq for LaurentK {
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.coeffs == other.coeffs && (self.coeffs.is_empty() || self.ord == other.ord)
    }
}
impl Eq for LaurentK {}

impl Hash for LaurentK {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.prec.hash(state);
        self.coeffs.hash(state);
        if !self.coeffs.is_empty() {
            self.ord.hash(state);
        }
    }
}

impl Add for &LaurentK {
    type Output = LaurentK;
    fn add(self, rhs: &LaurentK) -> LaurentK {
        self.combine(rhs, true)
    }
}
impl Sub for &LaurentK {
    type Output = LaurentK;
    fn sub(self, rhs: &LaurentK) -> LaurentK {
        self.combine(rhs, false)
    }
}
impl Neg for &LaurentK {
    type Output = LaurentK;
    fn neg(self) -> LaurentK {
        let f = self.field;
        LaurentK {
            field: f,
            ord: self.ord,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            prec: self.prec,
        }
    }
}
impl Mul for &LaurentK {
    type Output = LaurentK;
    fn mul(self, rhs: &LaurentK) -> LaurentK {
        assert!(std::ptr::eq(self.field, rhs.field), "mixing fields in LaurentK");
        let f = self.field;
        // the product is known below min(prec_a + ord_b, prec_b + ord_a)
        let bound = |p: Option<i64>, other: &LaurentK| -> Option<i64> {
            p.map(|p| if other.coeffs.is_empty() { p + other.prec.unwrap_or(p) } else { p + other.ord })
        };
        let prec = match (bound(self.prec, rhs), bound(rhs.prec, self)) {
            (None, p) | (p, None) => p,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return LaurentK { field: f, ord: 0, coeffs: Vec::new(), prec };
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
        LaurentK::normalized(f, self.ord + rhs.ord, v, prec)
    }
}
impl Add for LaurentK {
    type Output = LaurentK;
    fn add(self, rhs: LaurentK) -> LaurentK {
        &self + &rhs
    }
}
impl Sub for LaurentK {
    type Output = LaurentK;
    fn sub(self, rhs: LaurentK) -> LaurentK {
        &self - &rhs
    }
}
impl Mul for LaurentK {
    type Output = LaurentK;
    fn mul(self, rhs: LaurentK) -> LaurentK {
        &self * &rhs
    }
}
impl Neg for LaurentK {
    type Output = LaurentK;
    fn neg(self) -> LaurentK {
        -&self
    }
}

impl fmt::Display for LaurentK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ if c == Fe::ONE => format!("pi^{e}"),
                _ => format!("{c}*pi^{e}"),
            })
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
        match self.prec {
            None => write!(f, "{body}"),
            Some(p) => write!(f, "{body}+O(pi^{p})"),
        }
    }
}

impl fmt::Debug for LaurentK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentK({self})")
    }
}

/// Expansion of a/b at ∞ with coefficients of exponents below `prec`.
pub fn embed_k(a: &PolyA, b: &PolyA, prec: i64) -> Result<LaurentK, AlgebraError> {
    if b.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    LaurentK::from_poly(a).div_to(&LaurentK::from_poly(b), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn f2() -> &'static Fq {
        Fq::new(2).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let f = f2();
        let one = PolyA::one(f);
        let t = PolyA::t(f);
        let x = embed_k(&one, &t, 5).unwrap();
        assert_eq!(x.ord(), 1);
        assert_eq!(x.terms().collect::<Vec<_>>(), vec![(1, Fe::ONE)]);
        let t1 = parse_poly(f, "T+1").unwrap();
        let y = embed_k(&t, &t1, 6).unwrap();
        // T/(T+1) = 1/(1+π) = 1 + π + π^2 + ... over F_2
        assert_eq!(y.terms().map(|(e, _)| e).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);
        let z = embed_k(&PolyA::zero(f), &t1, 4).unwrap();
        assert!(z.is_zero());
        assert!(embed_k(&t, &PolyA::zero(f), 3).is_err());
    }

    #[test]
    fn precision_is_enforced() {
        let f = f2();
        let x = LaurentK::with_precision(f, 0, vec![Fe::ONE, Fe::ONE], 3);
        assert!(x.coeff(2).is_ok());
        assert!(x.coeff(3).is_err());
        assert!(x.truncated(4).is_err());
        let y = &x * &LaurentK::monomial(f, Fe::ONE, 2);
        assert_eq!(y.precision(), Some(5));
        let prod = &x * &x;
        assert_eq!(prod.precision(), Some(3));
        let lo = LaurentK::with_precision(f, 0, vec![Fe::ONE], 2);
        assert!(LaurentK::one(f).div_to(&lo, 5).is_err());
        assert!(LaurentK::one(f).div_to(&lo, 2).is_ok());
    }

    #[test]
    fn valuation_adds_under_product() {
        let f = Fq::new(3).unwrap();
        let a = LaurentK::from_poly(&parse_poly(f, "T^2+2").unwrap());
        let b = embed_k(&PolyA::one(f), &parse_poly(f, "T^3+T+1").unwrap(), 10).unwrap();
        assert_eq!(a.ord(), -2);
        assert_eq!(b.ord(), 3);
        assert_eq!((&a * &b).ord(), 1);
    }
}
