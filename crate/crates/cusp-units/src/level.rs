//! A square-free level with its prime factors, norms and divisor lattice.
//!
//! Monic divisors of a square-free I are subsets of its prime factors and are
//! stored as bit masks; gcd and lcm become `&` and `|`.

use fq_algebra::{arith, PolyA};

use crate::error::UnitsError;

/// A monic divisor of the level, as a subset of its prime factors.
pub type DivisorMask = u32;

/// Square-free level data.
#[derive(Clone, Debug)]
pub struct Level {
    poly: PolyA,
    primes: Vec<PolyA>,
    norms: Vec<i64>,
}

impl Level {
    /// Validates I (monic, square-free) and factors it; primes are sorted canonically.
    pub fn new(poly: &PolyA) -> Result<Self, UnitsError> {
        if poly.is_zero() || !poly.is_monic() {
            return Err(UnitsError::BadLevel(poly.to_string()));
        }
        let mut primes = arith::squarefree_primes(poly).map_err(|_| UnitsError::BadLevel(poly.to_string()))?;
        primes.sort();
        let norms = primes.iter().map(|p| Ok(arith::norm(p)? as i64)).collect::<Result<_, UnitsError>>()?;
        Ok(Level { poly: poly.clone(), primes, norms })
    }

    /// I as a polynomial.
    pub fn poly(&self) -> &PolyA {
        &self.poly
    }
    /// Prime factors in canonical order.
    pub fn primes(&self) -> &[PolyA] {
        &self.primes
    }
    /// q.
    pub fn q(&self) -> i64 {
        i64::from(self.poly.field().q())
    }
    /// The mask of I itself.
    pub fn full(&self) -> DivisorMask {
        (1 << self.primes.len()) - 1
    }
    /// Every divisor mask, in increasing order of the mask.
    pub fn divisors(&self) -> impl Iterator<Item = DivisorMask> {
        0..=self.full()
    }
    /// Index of the canonical-least prime factor f₀.
    pub fn f0(&self) -> Result<usize, UnitsError> {
        if self.primes.is_empty() {
            Err(UnitsError::NoPrimeFactor(self.poly.to_string()))
        } else {
            Ok(0)
        }
    }
    /// |d|.
    pub fn norm(&self, d: DivisorMask) -> i64 {
        self.bits(d).map(|i| self.norms[i]).product()
    }
    /// μ(d).
    pub fn moebius(&self, d: DivisorMask) -> i64 {
        if d.count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }
    /// I/d.
    pub fn complement(&self, d: DivisorMask) -> DivisorMask {
        self.full() & !d
    }
    /// The product of the primes in the mask.
    pub fn divisor_poly(&self, d: DivisorMask) -> PolyA {
        self.bits(d).fold(PolyA::one(self.poly.field()), |acc, i| &acc * &self.primes[i])
    }
    /// The mask of a monic divisor of I.
    pub fn mask_of(&self, d: &PolyA) -> Result<DivisorMask, UnitsError> {
        if d.is_zero() || !d.is_monic() || !self.poly.divisible_by(d) {
            return Err(UnitsError::NotADivisor(d.to_string(), self.poly.to_string()));
        }
        Ok(self.primes.iter().enumerate().filter(|(_, p)| d.divisible_by(p)).map(|(i, _)| 1 << i).sum())
    }
    /// Π over the prime factors of (1 - |f|^power).
    pub fn product_one_minus(&self, power: u32) -> i64 {
        self.norms.iter().map(|n| 1 - n.pow(power)).product()
    }
    /// κ = Π (1 + |f|).
    pub fn kappa(&self) -> i64 {
        self.norms.iter().map(|n| 1 + n).product()
    }

    fn bits(&self, d: DivisorMask) -> impl Iterator<Item = usize> {
        (0..self.primes.len()).filter(move |i| d & (1 << i) != 0)
    }
}

/// ord_{P_d} Δ(I′τ) = |I| |(d, I′)| / |[d, I′]|.
pub fn ord_cusp(level: &Level, d: DivisorMask, i_prime: DivisorMask) -> i64 {
    level.norm(level.full()) * level.norm(d & i_prime) / level.norm(d | i_prime)
}
