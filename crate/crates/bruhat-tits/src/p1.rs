//! The projective line over A/I for square-free I, with GL2(A) acting on rows.
//!
//! A point is stored as a mixed-radix code: for each prime P | I the component
//! is either `[r : 1]` (digit = index of the residue r) or `[1 : 0]`
//! (digit = |P|). Residues are indexed by their coefficient vectors read in
//! base q from the constant term, the order produced by enumerating
//! polynomials of degree < deg P.

use fq_algebra::{arith, Fq, PolyA};

use crate::error::TreeError;
use crate::matrix::MatA;

/// A point of P¹(A/I).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point(pub u32);

/// One local component of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalPoint {
    /// `[r : 1]`.
    Affine(PolyA),
    /// `[1 : 0]`.
    Infinity,
}

/// P¹(A/I) for square-free monic I.
#[derive(Clone, Debug)]
pub struct P1Space {
    field: &'static Fq,
    level: PolyA,
    primes: Vec<PolyA>,
    norms: Vec<u32>,
    size: u32,
}

impl P1Space {
    /// Builds P¹(A/I); errors unless I is monic and square-free.
    pub fn new(level: &PolyA) -> Result<Self, TreeError> {
        let primes = arith::squarefree_primes(level).map_err(|_| TreeError::BadLevel(level.to_string()))?;
        let norms: Vec<u32> = primes
            .iter()
            .map(|p| p.norm().map(|n| n as u32))
            .collect::<Result<_, _>>()?;
        let size = norms.iter().map(|n| n + 1).product();
        Ok(P1Space { field: level.field(), level: level.clone(), primes, norms, size })
    }

    /// The level I.
    pub fn level(&self) -> &PolyA {
        &self.level
    }
    /// Prime factors of I, canonical order.
    pub fn primes(&self) -> &[PolyA] {
        &self.primes
    }
    /// Number of points, the product of |P| + 1.
    pub fn len(&self) -> usize {
        self.size as usize
    }
    /// Always false: P¹ over the zero ring has one point.
    pub fn is_empty(&self) -> bool {
        false
    }
    /// All points in code order.
    pub fn points(&self) -> impl Iterator<Item = P1Point> {
        (0..self.size).map(P1Point)
    }

    fn residue_code(&self, r: &PolyA) -> u32 {
        let q = self.field.q();
        r.coeffs().iter().rev().fold(0, |acc, c| acc * q + c.index())
    }

    fn residue(&self, mut code: u32, deg: usize) -> PolyA {
        let q = self.field.q();
        let mut v = Vec::with_capacity(deg);
        for _ in 0..deg {
            v.push(self.field.elem(code % q));
            code /= q;
        }
        PolyA::new(self.field, v)
    }

    fn digits(&self, x: P1Point) -> Vec<u32> {
        let mut code = x.0;
        self.norms
            .iter()
            .map(|n| {
                let d = code % (n + 1);
                code /= n + 1;
                d
            })
            .collect()
    }

    fn point_of_digits(&self, digits: &[u32]) -> P1Point {
        let mut code = 0;
        for (d, n) in digits.iter().zip(&self.norms).rev() {
            code = code * (n + 1) + d;
        }
        P1Point(code)
    }

    /// Local components of a point.
    pub fn components(&self, x: P1Point) -> Vec<LocalPoint> {
        self.digits(x)
            .into_iter()
            .zip(self.primes.iter().zip(&self.norms))
            .map(|(d, (p, &n))| {
                if d == n {
                    LocalPoint::Infinity
                } else {
                    LocalPoint::Affine(self.residue(d, p.degree().unwrap()))
                }
            })
            .collect()
    }

    fn local_digit(&self, i: usize, c: &PolyA, d: &PolyA) -> u32 {
        let p = &self.primes[i];
        let c = c.rem(p);
        let d = d.rem(p);
        if d.is_zero() {
            assert!(!c.is_zero(), "[0:0] is not a point of P^1");
            return self.norms[i];
        }
        let dinv = d.inv_mod(p).expect("d is a unit mod a prime");
        self.residue_code(&(&c * &dinv).rem(p))
    }

    /// The point `[c : d]`; (c, d) must generate the unit ideal modulo each prime.
    pub fn point(&self, c: &PolyA, d: &PolyA) -> P1Point {
        let digits: Vec<u32> = (0..self.primes.len()).map(|i| self.local_digit(i, c, d)).collect();
        self.point_of_digits(&digits)
    }

    /// Right action of a matrix on row vectors: `[c : d] m`.
    pub fn act(&self, x: P1Point, m: &MatA) -> P1Point {
        let comps = self.components(x);
        let digits: Vec<u32> = comps
            .iter()
            .enumerate()
            .map(|(i, comp)| {
                let (r0, r1) = match comp {
                    LocalPoint::Affine(r) => (r.clone(), PolyA::one(self.field)),
                    LocalPoint::Infinity => (PolyA::one(self.field), PolyA::zero(self.field)),
                };
                let nc = &(&r0 * &m.a) + &(&r1 * &m.c);
                let nd = &(&r0 * &m.b) + &(&r1 * &m.d);
                self.local_digit(i, &nc, &nd)
            })
            .collect();
        self.point_of_digits(&digits)
    }

    /// The monic divisor d of I made of the primes where the point is `[0 : 1]`.
    pub fn zero_support(&self, x: P1Point) -> PolyA {
        self.components(x)
            .iter()
            .zip(&self.primes)
            .filter(|(c, _)| matches!(c, LocalPoint::Affine(r) if r.is_zero()))
            .fold(PolyA::one(self.field), |acc, (_, p)| &acc * p)
    }

    /// A coprime pair (c, d) in A with `[c : d] = x`.
    pub fn lift(&self, x: P1Point) -> Result<(PolyA, PolyA), TreeError> {
        let f = self.field;
        let i_poly = &self.level;
        if self.primes.is_empty() {
            return Ok((PolyA::zero(f), PolyA::one(f)));
        }
        let mut c = PolyA::zero(f);
        let mut d = PolyA::zero(f);
        for (p, comp) in self.primes.iter().zip(self.components(x)) {
            let other = i_poly.quo(p);
            let s = other.inv_mod(p).expect("coprime cofactor");
            let e = (&s * &other).rem(i_poly);
            let (cc, dd) = match comp {
                LocalPoint::Affine(r) => (r, PolyA::one(f)),
                LocalPoint::Infinity => (PolyA::one(f), PolyA::zero(f)),
            };
            c = &c + &(&e * &cc);
            d = &d + &(&e * &dd);
        }
        let c = c.rem(i_poly);
        let d = d.rem(i_poly);
        if c.is_zero() {
            return Ok((c, PolyA::one(f)));
        }
        const MAX_EXTRA_DEG: usize = 8;
        for deg in 0..=MAX_EXTRA_DEG {
            for extra in arith::polys_deg_lt(f, deg + 1) {
                if deg > 0 && extra.degree() != Some(deg) {
                    continue;
                }
                let dd = &d + &(&extra * i_poly);
                if !dd.is_zero() && c.gcd(&dd)?.is_one() {
                    return Ok((c, dd));
                }
            }
        }
        Err(TreeError::LiftFailed(MAX_EXTRA_DEG))
    }

    /// A matrix `(a b; c d)` in SL2(A) whose bottom row lifts `x`.
    pub fn lift_matrix(&self, x: P1Point) -> Result<MatA, TreeError> {
        let (c, d) = self.lift(x)?;
        // s d + t c = 1, so (s -t; c d) has determinant 1
        let (g, s, t) = d.xgcd(&c)?;
        debug_assert!(g.is_one());
        Ok(MatA::new(s, -&t, c, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fq_algebra::parse_poly;

    #[test]
    fn point_count_and_roundtrip() {
        let f = Fq::new(2).unwrap();
        let sp = P1Space::new(&parse_poly(f, "T*(T+1)*(T^2+T+1)").unwrap()).unwrap();
        assert_eq!(sp.len(), 3 * 3 * 5);
        for x in sp.points() {
            let (c, d) = sp.lift(x).unwrap();
            assert!(c.gcd(&d).unwrap().is_one());
            assert_eq!(sp.point(&c, &d), x);
            let m = sp.lift_matrix(x).unwrap();
            assert!(m.det().is_one());
        }
    }

    #[test]
    fn action_is_a_right_action() {
        let f = Fq::new(3).unwrap();
        let sp = P1Space::new(&parse_poly(f, "T^2+1").unwrap()).unwrap();
        let m1 = MatA::new(parse_poly(f, "T").unwrap(), PolyA::one(f), PolyA::one(f), PolyA::zero(f));
        let m2 = MatA::upper(parse_poly(f, "T+2").unwrap());
        for x in sp.points() {
            assert_eq!(sp.act(sp.act(x, &m1), &m2), sp.act(x, &(&m1 * &m2)));
        }
    }

    #[test]
    fn rejects_non_squarefree_level() {
        let f = Fq::new(2).unwrap();
        assert!(P1Space::new(&parse_poly(f, "T^2").unwrap()).is_err());
    }
}
