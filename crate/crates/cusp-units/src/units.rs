//! Cusp divisors and modular units written in the basis Δ(dτ), d | I.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use bruhat_tits::Vertex;
use eisenstein_delta::log_delta_scaled;

use crate::error::UnitsError;
use crate::level::{ord_cusp, DivisorMask, Level};

/// Σ_d c_d P_d over the cusps of X₀(I), indexed by divisor mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspDivisor {
    coefficients: Vec<i64>,
}

impl CuspDivisor {
    /// The zero divisor.
    pub fn zero(level: &Level) -> Self {
        CuspDivisor { coefficients: vec![0; level.full() as usize + 1] }
    }
    /// c · P_d.
    pub fn point(level: &Level, d: DivisorMask, c: i64) -> Self {
        let mut z = Self::zero(level);
        z.coefficients[d as usize] = c;
        z
    }
    /// Coefficient of P_d.
    pub fn coefficient(&self, d: DivisorMask) -> i64 {
        self.coefficients[d as usize]
    }
    /// Coefficients indexed by divisor mask.
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }
    /// Sum of the coefficients.
    pub fn degree(&self) -> i64 {
        self.coefficients.iter().sum()
    }
    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }
    /// Coefficientwise c·self + other.
    pub fn axpy(&self, c: i64, other: &CuspDivisor) -> CuspDivisor {
        CuspDivisor { coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| c * a + b).collect() }
    }
    /// Map from divisor (as a string) to coefficient, zero entries omitted.
    pub fn labelled(&self, level: &Level) -> BTreeMap<String, i64> {
        labelled(level, &self.coefficients)
    }
}

fn labelled(level: &Level, v: &[i64]) -> BTreeMap<String, i64> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(d, c)| (level.divisor_poly(d as DivisorMask).to_string(), *c))
        .collect()
}

/// Π_d Δ(dτ)^{e_d}, stored as the exponent vector indexed by divisor mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitExpr {
    exponents: Vec<i64>,
}

impl UnitExpr {
    /// The trivial unit.
    pub fn one(level: &Level) -> Self {
        UnitExpr { exponents: vec![0; level.full() as usize + 1] }
    }
    /// Δ(dτ).
    pub fn delta_scaled(level: &Level, d: DivisorMask) -> Self {
        let mut u = Self::one(level);
        u.exponents[d as usize] = 1;
        u
    }
    /// Δ_I = Π_{d|I} Δ((I/d)τ)^{μ(d)}.
    pub fn modular_unit(level: &Level) -> Self {
        UnitExpr { exponents: level.divisors().map(|d| level.moebius(level.complement(d))).collect() }
    }
    /// D_a = Π_{d|I} Δ(dτ)^{μ(I/d)|I||(a,d)|/|[a,d]|}.
    pub fn simple(level: &Level, a: DivisorMask) -> Self {
        UnitExpr {
            exponents: level
                .divisors()
                .map(|d| level.moebius(level.complement(d)) * level.norm(level.full()) * level.norm(a & d) / level.norm(a | d))
                .collect(),
        }
    }
    /// F_a = D_a D_{f₀a} for a | I/f₀.
    pub fn f_unit(level: &Level, a: DivisorMask) -> Result<Self, UnitsError> {
        let f0 = 1 << level.f0()?;
        if a & f0 != 0 {
            return Err(UnitsError::NotADivisor(
                level.divisor_poly(a).to_string(),
                level.divisor_poly(level.complement(f0)).to_string(),
            ));
        }
        Ok(Self::simple(level, a).mul(&Self::simple(level, a | f0)))
    }

    /// Exponent of Δ(dτ).
    pub fn exponent(&self, d: DivisorMask) -> i64 {
        self.exponents[d as usize]
    }
    /// The exponent vector.
    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }
    /// Product of units.
    pub fn mul(&self, other: &UnitExpr) -> UnitExpr {
        UnitExpr { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }
    /// self^k.
    pub fn pow(&self, k: i64) -> UnitExpr {
        UnitExpr { exponents: self.exponents.iter().map(|a| a * k).collect() }
    }
    /// Weight Σ e_d (q² - 1).
    pub fn weight(&self, q: i64) -> i64 {
        self.exponents.iter().sum::<i64>() * (q * q - 1)
    }
    /// The divisor supported on the cusps.
    pub fn divisor(&self, level: &Level) -> CuspDivisor {
        CuspDivisor {
            coefficients: level
                .divisors()
                .map(|c| level.divisors().map(|d| self.exponent(d) * ord_cusp(level, c, d)).sum())
                .collect(),
        }
    }
    /// log_q|u|(v) = Σ_d e_d log_q|Δ(dτ)|(v).
    pub fn log_abs(&self, level: &Level, v: &Vertex) -> Result<BigInt, UnitsError> {
        let mut s = BigInt::from(0);
        for d in level.divisors() {
            let e = self.exponent(d);
            if e != 0 {
                s += log_delta_scaled(&level.divisor_poly(d), v)? * e;
            }
        }
        Ok(s)
    }
    /// Map from divisor (as a string) to exponent, zero entries omitted.
    pub fn labelled(&self, level: &Level) -> BTreeMap<String, i64> {
        labelled(level, &self.exponents)
    }
}

/// κ·(exponents of Δ_I) against Σ_a (exponents of F_a), a | I/f₀.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    /// The level.
    pub level: String,
    /// κ = Π(1 + |f|).
    pub kappa: i64,
    /// Exponents of Δ_I^κ.
    pub lhs: BTreeMap<String, i64>,
    /// Exponents of Π F_a.
    pub rhs: BTreeMap<String, i64>,
    /// Exponent vectors agree.
    pub exponents_agree: bool,
    /// κ div(Δ_I) = Σ div(F_a), checked independently on divisors.
    pub divisors_agree: bool,
}

impl FactorizationReport {
    /// Both identities hold.
    pub fn holds(&self) -> bool {
        self.exponents_agree && self.divisors_agree
    }
}

/// The divisors a of I/f₀.
pub fn f_indices(level: &Level) -> Result<Vec<DivisorMask>, UnitsError> {
    let f0 = 1 << level.f0()?;
    Ok(level.divisors().filter(|a| a & f0 == 0).collect())
}

/// Checks Δ_I^κ = Π_{a | I/f₀} F_a.
pub fn factorization_check(level: &Level) -> Result<FactorizationReport, UnitsError> {
    let kappa = level.kappa();
    let lhs = UnitExpr::modular_unit(level).pow(kappa);
    let mut rhs = UnitExpr::one(level);
    let mut div_rhs = CuspDivisor::zero(level);
    for a in f_indices(level)? {
        let fa = UnitExpr::f_unit(level, a)?;
        div_rhs = div_rhs.axpy(1, &fa.divisor(level));
        rhs = rhs.mul(&fa);
    }
    let div_lhs = UnitExpr::modular_unit(level).divisor(level).axpy(kappa, &CuspDivisor::zero(level));
    Ok(FactorizationReport {
        level: level.poly().to_string(),
        kappa,
        exponents_agree: lhs == rhs,
        divisors_agree: div_lhs == div_rhs,
        lhs: lhs.labelled(level),
        rhs: rhs.labelled(level),
    })
}

/// A unit whose divisor is ±N (P_a - P_{a′}).
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// First cusp.
    pub a: String,
    /// Second cusp.
    pub a_prime: String,
    /// Exponents of D_a / D_{a′}^{μ(a)/μ(a′)}.
    pub unit: BTreeMap<String, i64>,
    /// Its divisor.
    pub divisor: BTreeMap<String, i64>,
    /// Weight of the unit (must be 0).
    pub weight: i64,
    /// Divisor equals μ(a) Π(1 - |f|²)(P_a - P_{a′}) and the weight vanishes.
    pub verified: bool,
}

/// The bound N = |Π(1 - |f|²)| on the order of cuspidal classes, with witnesses.
#[derive(Clone, Debug, Serialize)]
pub struct MdCertificate {
    /// The level.
    pub level: String,
    /// N.
    pub bound: i64,
    /// One witness per unordered cusp pair.
    pub witnesses: Vec<Witness>,
}

impl MdCertificate {
    /// Every witness verified.
    pub fn verified(&self) -> bool {
        self.witnesses.iter().all(|w| w.verified)
    }
}

/// Builds and checks the witness for every pair of distinct cusps.
pub fn manin_drinfeld_bound(level: &Level) -> MdCertificate {
    let prod = level.product_one_minus(2);
    let mut witnesses = Vec::new();
    for a in level.divisors() {
        for b in level.divisors().filter(|&b| b > a) {
            let sign = level.moebius(a) * level.moebius(b);
            let unit = UnitExpr::simple(level, a).mul(&UnitExpr::simple(level, b).pow(-sign));
            let divisor = unit.divisor(level);
            let expected = CuspDivisor::point(level, a, level.moebius(a) * prod)
                .axpy(1, &CuspDivisor::point(level, b, -level.moebius(a) * prod));
            let weight = unit.weight(level.q());
            witnesses.push(Witness {
                a: level.divisor_poly(a).to_string(),
                a_prime: level.divisor_poly(b).to_string(),
                unit: unit.labelled(level),
                divisor: divisor.labelled(level),
                weight,
                verified: weight == 0 && divisor == expected,
            });
        }
    }
    MdCertificate { level: level.poly().to_string(), bound: prod.abs(), witnesses }
}
