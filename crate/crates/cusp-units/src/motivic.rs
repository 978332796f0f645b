//! The element Ξ₀(I) of the motivic cohomology of X₀(I) × X₀(I), as a formal
//! sum of (curve, unit) pairs, and its cocycle condition.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::UnitsError;
use crate::level::{DivisorMask, Level};
use crate::units::{f_indices, UnitExpr};

/// A curve on the surface X₀(I) × X₀(I).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Curve {
    /// The diagonal.
    Diagonal,
    /// P_d × X₀(I); the unit is a function of the second factor.
    Vertical(DivisorMask),
    /// X₀(I) × P_d; the unit is a function of the first factor.
    Horizontal(DivisorMask),
}

/// One summand `sign · (curve, unit)`.
#[derive(Clone, Debug)]
pub struct MotivicTerm {
    /// Sign in the formal sum.
    pub sign: i64,
    /// Supporting curve.
    pub curve: Curve,
    /// Function on the curve.
    pub unit: UnitExpr,
}

/// A formal sum of (curve, unit) pairs on X₀(I) × X₀(I).
#[derive(Clone, Debug)]
pub struct MotivicElement {
    level: Level,
    terms: Vec<MotivicTerm>,
}

/// Cusp pair (P_a, P_b) on the surface.
pub type CuspPair = (DivisorMask, DivisorMask);

impl MotivicElement {
    /// The level.
    pub fn level(&self) -> &Level {
        &self.level
    }
    /// The summands.
    pub fn terms(&self) -> &[MotivicTerm] {
        &self.terms
    }

    /// Σ sign · div(unit) as a 0-cycle supported on cusp pairs.
    pub fn divisor_sum(&self) -> BTreeMap<CuspPair, i64> {
        let mut out: BTreeMap<CuspPair, i64> = BTreeMap::new();
        for term in &self.terms {
            let div = term.unit.divisor(&self.level);
            for c in self.level.divisors() {
                let k = div.coefficient(c);
                if k == 0 {
                    continue;
                }
                let point = match term.curve {
                    Curve::Diagonal => (c, c),
                    Curve::Vertical(d) => (d, c),
                    Curve::Horizontal(d) => (c, d),
                };
                *out.entry(point).or_insert(0) += term.sign * k;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Errors at the first cusp pair with nonzero total multiplicity.
    pub fn check_cocycle(&self) -> Result<(), UnitsError> {
        match self.divisor_sum().into_iter().next() {
            None => Ok(()),
            Some(((a, b), c)) => Err(UnitsError::Cocycle {
                first: self.level.divisor_poly(a).to_string(),
                second: self.level.divisor_poly(b).to_string(),
                coefficient: c,
            }),
        }
    }
}

/// Ξ₀(I) = (diagonal, Δ_I^κ) - Σ_{d | I/f₀} [(P_d × X₀(I), F_d) + (X₀(I) × P_{f₀d}, F_d)],
/// returned only if the cocycle condition holds.
pub fn build_xi(level: &Level) -> Result<MotivicElement, UnitsError> {
    let f0 = 1 << level.f0()?;
    let mut terms = vec![MotivicTerm {
        sign: 1,
        curve: Curve::Diagonal,
        unit: UnitExpr::modular_unit(level).pow(level.kappa()),
    }];
    for d in f_indices(level)? {
        let fd = UnitExpr::f_unit(level, d)?;
        terms.push(MotivicTerm { sign: -1, curve: Curve::Vertical(d), unit: fd.clone() });
        terms.push(MotivicTerm { sign: -1, curve: Curve::Horizontal(d | f0), unit: fd });
    }
    let xi = MotivicElement { level: level.clone(), terms };
    xi.check_cocycle()?;
    Ok(xi)
}
