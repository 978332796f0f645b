//! 2x2 matrices over A = F_q[T] and over K_∞.

use std::fmt;
use std::ops::Mul;

use fq_algebra::{Fe, Fq, LaurentK, PolyA};

use crate::error::TreeError;

/// A 2x2 matrix `(a b; c d)` with entries in A.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatA {
    pub a: PolyA,
    pub b: PolyA,
    pub c: PolyA,
    pub d: PolyA,
}

impl MatA {
    /// Matrix from its four entries, row-major.
    pub fn new(a: PolyA, b: PolyA, c: PolyA, d: PolyA) -> Self {
        MatA { a, b, c, d }
    }
    /// The identity.
    pub fn identity(f: &'static Fq) -> Self {
        Self::new(PolyA::one(f), PolyA::zero(f), PolyA::zero(f), PolyA::one(f))
    }
    /// The involution `(0 1; 1 0)`.
    pub fn swap(f: &'static Fq) -> Self {
        Self::new(PolyA::zero(f), PolyA::one(f), PolyA::one(f), PolyA::zero(f))
    }
    /// `(1 b; 0 1)`.
    pub fn upper(b: PolyA) -> Self {
        let f = b.field();
        Self::new(PolyA::one(f), b, PolyA::zero(f), PolyA::one(f))
    }
    /// `diag(x, y)`.
    pub fn diag(x: PolyA, y: PolyA) -> Self {
        let f = x.field();
        Self::new(x, PolyA::zero(f), PolyA::zero(f), y)
    }
    /// The coefficient field.
    pub fn field(&self) -> &'static Fq {
        self.a.field()
    }
    /// Determinant.
    pub fn det(&self) -> PolyA {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }
    /// Inverse in GL2(A); errors unless the determinant is a nonzero constant.
    pub fn inverse(&self) -> Result<MatA, TreeError> {
        let det = self.det();
        if det.degree() != Some(0) {
            return Err(TreeError::NotInvertibleOverA(det.to_string()));
        }
        let f = self.field();
        let inv = f.inv(det.coeff(0)).expect("nonzero constant");
        Ok(MatA::new(self.d.scale(inv), (-&self.b).scale(inv), (-&self.c).scale(inv), self.a.scale(inv)))
    }
    /// True if the lower-left entry is divisible by `level`, i.e. the matrix lies in Γ₀(level)
    /// when it is also invertible over A.
    pub fn in_gamma0(&self, level: &PolyA) -> bool {
        self.det().degree() == Some(0) && self.c.divisible_by(level)
    }
    /// Image in GL2(K_∞).
    pub fn to_k(&self) -> Mat2 {
        Mat2::new(
            LaurentK::from_poly(&self.a),
            LaurentK::from_poly(&self.b),
            LaurentK::from_poly(&self.c),
            LaurentK::from_poly(&self.d),
        )
    }
    /// Scalar multiple of the identity, used for central elements.
    pub fn scalar(f: &'static Fq, c: Fe) -> Self {
        Self::diag(PolyA::constant(f, c), PolyA::constant(f, c))
    }
}

impl Mul for &MatA {
    type Output = MatA;
    fn mul(self, o: &MatA) -> MatA {
        MatA::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }
}
impl Mul for MatA {
    type Output = MatA;
    fn mul(self, o: MatA) -> MatA {
        &self * &o
    }
}

impl fmt::Display for MatA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}
impl fmt::Debug for MatA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatA{self}")
    }
}

/// A 2x2 matrix over K_∞ with exact Laurent entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: LaurentK,
    pub b: LaurentK,
    pub c: LaurentK,
    pub d: LaurentK,
}

impl Mat2 {
    /// Matrix from its four entries, row-major.
    pub fn new(a: LaurentK, b: LaurentK, c: LaurentK, d: LaurentK) -> Self {
        Mat2 { a, b, c, d }
    }
    /// Determinant.
    pub fn det(&self) -> LaurentK {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }
}

impl From<&MatA> for Mat2 {
    fn from(m: &MatA) -> Self {
        m.to_k()
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}
