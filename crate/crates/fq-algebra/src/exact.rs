//! Exact characteristic-zero scalars.
//!
//! [`Num`] is an element of Q or of a number field K = Q[x]/(m(x)). Hecke
//! eigenvalues, Fourier coefficients, L-function coefficients and every
//! verified identity downstream are computed with it, so no floating point
//! enters a check. Quadratic fields are canonicalized to Q[x]/(x^2 - D) with
//! D square-free, which lets values coming from different computations share
//! one field.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A number field Q[x]/(m(x)) with m monic and irreducible over Q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: Vec<BigRational>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.quadratic_radicand() {
            return write!(f, "Q(sqrt({d}))");
        }
        write!(f, "Q[a]/({})", fmt_rat_poly(&self.modulus, "a"))
    }
}

fn fmt_rat_poly(c: &[BigRational], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, a) in c.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let mon = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let s = if i == 0 {
            a.to_string()
        } else if a.is_one() {
            mon
        } else if (-a).is_one() {
            format!("-{mon}")
        } else {
            format!("{a}*{mon}")
        };
        parts.push(s);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic `m`.
fn poly_rem_monic(mut a: Vec<BigRational>, m: &[BigRational]) -> Vec<BigRational> {
    let n = m.len() - 1;
    while a.len() > n {
        let lead = a.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = a.len() - n;
        for i in 0..n {
            a[shift + i] -= &lead * &m[i];
        }
    }
    trim(&mut a);
    a
}

/// Division with remainder in Q[x]; `b` nonzero.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let inv = b[db].recip();
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let c = r.last().unwrap() * &inv;
        let s = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[s + i] -= &c * bi;
        }
        q[s] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

/// Square-free part of a nonzero integer, keeping the sign. Trial division is
/// used; a cofactor left after dividing by all primes below 10^6 is kept as is.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "square-free part of zero");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= m && p < limit {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += if p == BigInt::from(2u32) { 1 } else { 2 };
    }
    let r = m.sqrt();
    if &r * &r != m {
        out *= m;
    }
    out * sign
}

impl NumberField {
    /// The field Q[x]/(m) for a monic irreducible `m` given low degree first.
    /// Irreducibility is the caller's responsibility. Quadratic moduli are
    /// rewritten into the canonical radical form; use [`NumberField::quadratic_with_root`]
    /// to also obtain the image of the old generator.
    pub fn new(modulus: Vec<BigRational>) -> Arc<Self> {
        assert!(modulus.len() >= 2, "number field of degree zero");
        assert!(modulus.last().unwrap().is_one(), "modulus must be monic");
        if modulus.len() == 3 {
            return Self::quadratic_with_root(&modulus[1], &modulus[0]).0;
        }
        Arc::new(NumberField { modulus })
    }

    /// Q(sqrt(d)) in canonical form; `d` must not be a perfect square.
    pub fn quadratic(d: &BigInt) -> Arc<Self> {
        let s = squarefree_part(d);
        assert!(!s.is_one(), "Q(sqrt(square)) is not a quadratic field");
        Arc::new(NumberField { modulus: vec![BigRational::from_integer(-s), rat(0), rat(1)] })
    }

    /// For x^2 + b x + c irreducible, the canonical field and the root
    /// (-b + sqrt(b^2 - 4c))/2 written in it.
    pub fn quadratic_with_root(b: &BigRational, c: &BigRational) -> (Arc<Self>, Num) {
        let disc = b * b - rat(4) * c;
        // disc = n/d = n d / d^2, so sqrt(disc) = sqrt(n d)/d = k sqrt(s) / d
        let nd = disc.numer() * disc.denom();
        let s = squarefree_part(&nd);
        let k2 = &nd / &s;
        let k = k2.sqrt();
        debug_assert_eq!(&k * &k, k2);
        let field = Self::quadratic(&s);
        let sqrt_coeff = BigRational::new(k, disc.denom().clone());
        let root = Num::from_parts(
            Some(field.clone()),
            vec![-b / rat(2), sqrt_coeff / rat(2)],
        );
        (field, root)
    }

    /// Degree over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Minimal polynomial of the generator, low degree first.
    pub fn modulus(&self) -> &[BigRational] {
        &self.modulus
    }

    /// D when the field is Q(sqrt(D)) in canonical form.
    pub fn quadratic_radicand(&self) -> Option<BigInt> {
        (self.degree() == 2 && self.modulus[1].is_zero()).then(|| (-&self.modulus[0]).to_integer())
    }

    /// Real roots of the modulus, increasing. Each is a real embedding of the field.
    pub fn real_embeddings(&self) -> Vec<f64> {
        let c: Vec<f64> = self.modulus.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        real_roots_f64(&c)
    }
}

/// Real roots of a real polynomial (low degree first) by Durand-Kerner
/// followed by Newton polishing. Adequate for the small-degree fields here.
pub fn real_roots_f64(c: &[f64]) -> Vec<f64> {
    let n = c.len() - 1;
    let lead = c[n];
    let a: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval_c = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for k in (0..=n).rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + a[k], acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let r = 1.0 + a.iter().map(|x| x.abs()).fold(0.0, f64::max);
            (r * 0.5 * ang.cos(), r * 0.5 * ang.sin())
        })
        .collect();
    for _ in 0..500 {
        let prev = z.clone();
        for (i, zi) in z.iter_mut().enumerate() {
            let num = eval_c(*zi);
            let mut den = (1.0, 0.0);
            for (j, zj) in prev.iter().enumerate() {
                if j != i {
                    let d = (zi.0 - zj.0, zi.1 - zj.1);
                    den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                }
            }
            let m = den.0 * den.0 + den.1 * den.1;
            if m == 0.0 {
                continue;
            }
            let q = ((num.0 * den.0 + num.1 * den.1) / m, (num.1 * den.0 - num.0 * den.1) / m);
            *zi = (zi.0 - q.0, zi.1 - q.1);
        }
    }
    let scale = 1.0 + z.iter().map(|w| w.0.abs()).fold(0.0, f64::max);
    let mut out: Vec<f64> = z.iter().filter(|w| w.1.abs() < 1e-7 * scale).map(|w| w.0).collect();
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    out
}

/// An element of Q or of a number field.
#[derive(Clone)]
pub struct Num {
    field: Option<Arc<NumberField>>,
    c: Vec<BigRational>,
}

impl Num {
    fn from_parts(field: Option<Arc<NumberField>>, mut c: Vec<BigRational>) -> Self {
        trim(&mut c);
        let field = if c.len() <= 1 { None } else { field };
        Num { field, c }
    }

    /// Zero.
    pub fn zero() -> Self {
        Num { field: None, c: Vec::new() }
    }
    /// One.
    pub fn one() -> Self {
        Self::int(1)
    }
    /// An integer.
    pub fn int(n: i64) -> Self {
        Self::from_parts(None, vec![rat(n)])
    }
    /// A big integer.
    pub fn bigint(n: BigInt) -> Self {
        Self::from_parts(None, vec![BigRational::from_integer(n)])
    }
    /// The rational n/d.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_parts(None, vec![BigRational::new(BigInt::from(n), BigInt::from(d))])
    }
    /// A rational.
    pub fn rational(r: BigRational) -> Self {
        Self::from_parts(None, vec![r])
    }
    /// The generator of `field`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_parts(Some(field.clone()), vec![rat(0), rat(1)])
    }
    /// Element of `field` from coefficients in the power basis.
    pub fn in_field(field: &Arc<NumberField>, coeffs: Vec<BigRational>) -> Self {
        let c = poly_rem_monic(coeffs, &field.modulus);
        Self::from_parts(Some(field.clone()), c)
    }

    /// The field this value lives in, `None` if rational.
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }
    /// Power-basis coefficients.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }
    /// True for 0.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// True for 1.
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
    /// True when the value is rational.
    pub fn is_rational(&self) -> bool {
        self.c.len() <= 1
    }
    /// The rational value, if rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.c.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// True when `self` and `other` can be combined.
    pub fn compatible(&self, other: &Num) -> bool {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    fn joint_field(&self, other: &Num) -> Option<Arc<NumberField>> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => {
                assert!(a == b, "mixing numbers from {a} and {b}");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Num> {
        if self.is_zero() {
            return None;
        }
        let Some(field) = &self.field else {
            return Some(Num::rational(self.c[0].recip()));
        };
        // extended Euclid: s*self + t*m = 1
        let m = field.modulus.clone();
        let (mut r0, mut r1) = (m, self.c.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![rat(1)]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut ns = s0.clone();
            if ns.len() < qs.len() {
                ns.resize(qs.len(), BigRational::zero());
            }
            for (i, x) in qs.into_iter().enumerate() {
                ns[i] -= x;
            }
            trim(&mut ns);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, ns);
        }
        assert_eq!(r0.len(), 1, "modulus is not irreducible");
        let k = r0[0].recip();
        let inv: Vec<BigRational> = s0.into_iter().map(|x| x * &k).collect();
        Some(Num::in_field(field, inv))
    }

    /// Integer power; negative exponents invert (panics on 0^-n).
    pub fn pow(&self, e: i64) -> Num {
        let base = if e < 0 { self.inv().expect("zero to a negative power") } else { self.clone() };
        let mut acc = Num::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    /// The nontrivial automorphism of a quadratic field (identity on Q).
    pub fn quadratic_conjugate(&self) -> Num {
        match &self.field {
            Some(f) if f.degree() == 2 => {
                let mut c = self.c.clone();
                c.resize(2, BigRational::zero());
                // canonical form has modulus x^2 - D, so x -> -x
                debug_assert!(f.modulus[1].is_zero());
                c[1] = -c[1].clone();
                Num::from_parts(self.field.clone(), c)
            }
            Some(_) => panic!("conjugate requested outside a quadratic field"),
            None => self.clone(),
        }
    }

    /// Value under the real embedding sending the generator to `root`.
    pub fn to_f64_at(&self, root: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, x| acc * root + x.to_f64().unwrap_or(f64::NAN))
    }

    /// Value under the largest real embedding, or the rational value.
    pub fn to_f64(&self) -> f64 {
        match &self.field {
            None => self.c.first().map_or(0.0, |x| x.to_f64().unwrap_or(f64::NAN)),
            Some(f) => {
                let roots = f.real_embeddings();
                let r = roots.last().copied().unwrap_or(f64::NAN);
                self.to_f64_at(r)
            }
        }
    }

    /// Norm down to Q, computed as the determinant of multiplication.
    pub fn norm(&self) -> BigRational {
        match &self.field {
            None => self.c.first().cloned().unwrap_or_else(BigRational::zero),
            Some(f) => {
                let n = f.degree();
                let mut rows = Vec::with_capacity(n);
                for i in 0..n {
                    let mut basis = vec![BigRational::zero(); i + 1];
                    basis[i] = rat(1);
                    let prod = &Num::in_field(f, basis) * self;
                    let mut row = prod.c.clone();
                    row.resize(n, BigRational::zero());
                    rows.push(row);
                }
                det_rational(rows)
            }
        }
    }
}

fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = rat(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let k = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &k * y;
            }
        }
    }
    det
}

impl PartialEq for Num {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && (self.c.len() <= 1 || self.field == other.field)
    }
}
impl Eq for Num {}

impl std::hash::Hash for Num {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl Default for Num {
    fn default() -> Self {
        Num::zero()
    }
}

impl From<i64> for Num {
    fn from(n: i64) -> Self {
        Num::int(n)
    }
}
impl From<BigRational> for Num {
    fn from(r: BigRational) -> Self {
        Num::rational(r)
    }
}

impl Add for &Num {
    type Output = Num;
    fn add(self, rhs: &Num) -> Num {
        let field = self.joint_field(rhs);
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), rhs.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Num::from_parts(field, c)
    }
}
impl Sub for &Num {
    type Output = Num;
    fn sub(self, rhs: &Num) -> Num {
        self + &(-rhs)
    }
}
impl Neg for &Num {
    type Output = Num;
    fn neg(self) -> Num {
        Num { field: self.field.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}
impl Mul for &Num {
    type Output = Num;
    fn mul(self, rhs: &Num) -> Num {
        let field = self.joint_field(rhs);
        let prod = poly_mul(&self.c, &rhs.c);
        match &field {
            Some(f) => Num::from_parts(field.clone(), poly_rem_monic(prod, &f.modulus)),
            None => Num::from_parts(None, prod),
        }
    }
}
impl Div for &Num {
    type Output = Num;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Num) -> Num {
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Num {
            type Output = Num;
            fn $m(self, rhs: Num) -> Num { (&self).$m(&rhs) }
        }
        impl $tr<&Num> for Num {
            type Output = Num;
            fn $m(self, rhs: &Num) -> Num { (&self).$m(rhs) }
        }
        impl $tr<Num> for &Num {
            type Output = Num;
            fn $m(self, rhs: Num) -> Num { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        -&self
    }
}

impl std::iter::Sum for Num {
    fn sum<I: Iterator<Item = Num>>(iter: I) -> Num {
        iter.fold(Num::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            None => match self.c.first() {
                None => write!(f, "0"),
                Some(r) => write!(f, "{r}"),
            },
            Some(k) => {
                if let Some(d) = k.quadratic_radicand() {
                    let var = format!("sqrt({d})");
                    write!(f, "{}", fmt_rat_poly(&self.c, &var))
                } else {
                    write!(f, "{}", fmt_rat_poly(&self.c, "a"))
                }
            }
        }
    }
}

impl fmt::Debug for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Num {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Dense univariate polynomial with [`Num`] coefficients, low degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NumPoly {
    c: Vec<Num>,
}

impl NumPoly {
    /// From coefficients, low degree first.
    pub fn new(mut c: Vec<Num>) -> Self {
        while c.last().is_some_and(Num::is_zero) {
            c.pop();
        }
        NumPoly { c }
    }
    /// From integer coefficients.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Num::int(x)).collect())
    }
    /// Zero polynomial.
    pub fn zero() -> Self {
        NumPoly { c: Vec::new() }
    }
    /// A constant.
    pub fn constant(a: Num) -> Self {
        Self::new(vec![a])
    }
    /// c t^k.
    pub fn monomial(a: Num, k: usize) -> Self {
        let mut v = vec![Num::zero(); k];
        v.push(a);
        Self::new(v)
    }
    /// Coefficients, low degree first.
    pub fn coeffs(&self) -> &[Num] {
        &self.c
    }
    /// Coefficient of t^i.
    pub fn coeff(&self, i: usize) -> Num {
        self.c.get(i).cloned().unwrap_or_default()
    }
    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Leading coefficient.
    pub fn leading(&self) -> Option<&Num> {
        self.c.last()
    }
    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let li = l.inv().unwrap();
                self.scale(&li)
            }
        }
    }
    /// Multiplies every coefficient by `a`.
    pub fn scale(&self, a: &Num) -> Self {
        Self::new(self.c.iter().map(|x| x * a).collect())
    }
    /// Evaluation by Horner's rule.
    pub fn eval(&self, x: &Num) -> Num {
        self.c.iter().rev().fold(Num::zero(), |acc, a| &(&acc * x) + a)
    }
    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * &Num::int(i as i64)).collect())
    }
    /// The polynomial p(a t).
    pub fn scale_var(&self, a: &Num) -> Self {
        let mut pw = Num::one();
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x * &pw);
            pw = &pw * a;
        }
        Self::new(out)
    }
    /// t^d p(1/t) for d >= deg p.
    pub fn reversed(&self, d: usize) -> Self {
        assert!(self.c.len() <= d + 1, "reversal degree below polynomial degree");
        let mut v = vec![Num::zero(); d + 1];
        for (i, x) in self.c.iter().enumerate() {
            v[d - i] = x.clone();
        }
        Self::new(v)
    }
    /// Largest k with t^k dividing p (0 for the zero polynomial).
    pub fn t_adic_valuation(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }
    /// p / t^k; panics if t^k does not divide p.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(self.t_adic_valuation() >= k || self.is_zero(), "t^k does not divide");
        Self::new(self.c.iter().skip(k).cloned().collect())
    }
    /// p * t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Num::zero(); k];
        v.extend(self.c.iter().cloned());
        Self::new(v)
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn div_rem(&self, d: &NumPoly) -> (NumPoly, NumPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let inv = d.leading().unwrap().inv().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Num::zero(); r.len() - dd];
        while r.len() > dd {
            let lead = r.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let k = &lead * &inv;
            let s = r.len() - dd;
            for i in 0..dd {
                r[s + i] = &r[s + i] - &(&k * &d.c[i]);
            }
            q[s] = k;
        }
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &NumPoly) -> NumPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// Power series of self / den modulo t^n; `den(0)` must be nonzero.
    pub fn series_div(&self, den: &NumPoly, n: usize) -> Vec<Num> {
        let d0 = den.coeff(0).inv().expect("series division needs a unit constant term");
        let mut out: Vec<Num> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k);
            for j in 1..=k.min(den.c.len().saturating_sub(1)) {
                acc = &acc - &(&den.c[j] * &out[k - j]);
            }
            out.push(&acc * &d0);
        }
        out
    }
}

impl Add for &NumPoly {
    type Output = NumPoly;
    fn add(self, rhs: &NumPoly) -> NumPoly {
        let n = self.c.len().max(rhs.c.len());
        NumPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}
impl Sub for &NumPoly {
    type Output = NumPoly;
    fn sub(self, rhs: &NumPoly) -> NumPoly {
        let n = self.c.len().max(rhs.c.len());
        NumPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}
impl Neg for &NumPoly {
    type Output = NumPoly;
    fn neg(self) -> NumPoly {
        NumPoly::new(self.c.iter().map(|x| -x).collect())
    }
}
impl Mul for &NumPoly {
    type Output = NumPoly;
    fn mul(self, rhs: &NumPoly) -> NumPoly {
        if self.is_zero() || rhs.is_zero() {
            return NumPoly::zero();
        }
        let mut out = vec![Num::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        NumPoly::new(out)
    }
}
macro_rules! owned_poly_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for NumPoly {
            type Output = NumPoly;
            fn $m(self, rhs: NumPoly) -> NumPoly { (&self).$m(&rhs) }
        }
    )*};
}
owned_poly_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for NumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                let coef = if a.is_rational() { a.to_string() } else { format!("({a})") };
                match i {
                    0 => coef,
                    1 => format!("{coef}*t"),
                    _ => format!("{coef}*t^{i}"),
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for NumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumPoly({self})")
    }
}

/// Greatest common divisor of a list of integers (non-negative).
pub fn gcd_all(xs: impl IntoIterator<Item = BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |a, b| a.gcd(&b))
}
