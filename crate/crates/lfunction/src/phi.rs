//! The completed function Φ_{f,g}(s) = -q^{1-2s} |I|^s L_{f,g}(s) L_∞(s) L_∞(s+1) / ζ_A(2s).

use serde::Serialize;

use cochain_forms::Eigenform;
use eisenstein_delta::RationalT;
use fq_algebra::{arith, Num, NumPoly, PolyA};

use crate::error::LError;
use crate::rankin::{rankin_l, RankinL};
use crate::zeta::{l_infinity, l_infinity_shifted};

/// Which hypothesis on the levels of the pair holds.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    /// The new levels are coprime and multiply to the square-free ambient level.
    CoprimeLevels,
    /// Both forms are new at the ambient level (functional equation not guaranteed).
    SameLevel,
    /// Neither of the above.
    Other,
}

impl Hypothesis {
    /// Classifies a pair of eigenforms of one ambient level.
    pub fn of(f: &Eigenform, g: &Eigenform) -> Hypothesis {
        let level = f.level();
        let (a, b) = (f.new_level(), g.new_level());
        let coprime = a.gcd(b).map(|d| d.is_one()).unwrap_or(false);
        if coprime && &(a * b) == level && arith::is_squarefree(level) {
            Hypothesis::CoprimeLevels
        } else if a == level && b == level {
            Hypothesis::SameLevel
        } else {
            Hypothesis::Other
        }
    }
}

/// Φ_{f,g} as an exact rational function of t = q^{-s}.
#[derive(Clone, Debug)]
pub struct PhiFunction {
    f: String,
    g: String,
    level: PolyA,
    hypothesis: Hypothesis,
    same_newform: bool,
    l: RankinL,
    rational: RationalT,
}

#[derive(Serialize)]
struct PhiJson<'a> {
    f: &'a str,
    g: &'a str,
    level: String,
    hypothesis: Hypothesis,
    l_numerator: Vec<String>,
    l_denominator: Vec<String>,
    numerator: Vec<String>,
    denominator: Vec<String>,
    functional_equation: bool,
    phi_at_0: Result<String, String>,
    phi_at_1: Result<String, String>,
}

fn coeff_strings(p: &NumPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

/// Builds Φ_{f,g} from the Rankin-Selberg L-function.
pub fn phi_fn(f: &Eigenform, g: &Eigenform) -> Result<PhiFunction, LError> {
    let l = rankin_l(f, g)?;
    let level = f.level().clone();
    let q = level.field().q();
    let deg = level.degree().unwrap_or(0) as i64;
    let qn = Num::int(i64::from(q));
    let inv_zeta = RationalT::from_ints(&[1, 0, -i64::from(q)]);
    let lead = -RationalT::monomial(qn, 2 - deg);
    let rational = &(&(&(&lead * &l.function) * &l_infinity()) * &l_infinity_shifted(q)) * &inv_zeta;
    Ok(PhiFunction {
        f: f.label(),
        g: g.label(),
        hypothesis: Hypothesis::of(f, g),
        same_newform: std::sync::Arc::ptr_eq(f.newform(), g.newform()),
        level,
        l,
        rational,
    })
}

impl PhiFunction {
    /// Label of the first form.
    pub fn f(&self) -> &str {
        &self.f
    }
    /// Label of the second form.
    pub fn g(&self) -> &str {
        &self.g
    }
    /// The ambient level I.
    pub fn level(&self) -> &PolyA {
        &self.level
    }
    /// Which level hypothesis the pair satisfies.
    pub fn hypothesis(&self) -> Hypothesis {
        self.hypothesis
    }
    /// True when f and g come from the same newform.
    pub fn same_newform(&self) -> bool {
        self.same_newform
    }
    /// Φ as a rational function of t.
    pub fn rational(&self) -> &RationalT {
        &self.rational
    }
    /// The underlying L-function and its certificate.
    pub fn l_function(&self) -> &RankinL {
        &self.l
    }

    fn q(&self) -> i64 {
        i64::from(self.level.field().q())
    }

    /// Φ(1 - s), i.e. Φ with t replaced by 1/(q t).
    pub fn reflected(&self) -> RationalT {
        self.rational.substitute_reciprocal(&Num::ratio(1, self.q()))
    }

    /// True when Φ(s) = -Φ(1-s) holds identically.
    pub fn satisfies_functional_equation(&self) -> bool {
        (&self.rational + &self.reflected()).is_zero()
    }

    /// Φ(0), the value at t = 1.
    ///
    /// For f = g the pole of L at s = 1 forces a pole at s = 0 through the
    /// functional equation, so this is an error even when the rational
    /// function happens to be finite at t = 1.
    pub fn value_at_zero(&self) -> Result<Num, LError> {
        if self.same_newform || self.rational.pole_order(&Num::one()) > 0 {
            return Err(LError::PoleAtZero);
        }
        Ok(self.rational.eval(&Num::one())?)
    }

    /// Φ(1), the value at t = 1/q.
    pub fn value_at_one(&self) -> Result<Num, LError> {
        let x = Num::ratio(1, self.q());
        if self.rational.pole_order(&x) > 0 {
            return Err(LError::PoleAtOne);
        }
        Ok(self.rational.eval(&x)?)
    }

    /// q|I| L_{f,g}(1)/(1 - q²).
    pub fn value_at_one_from_l(&self) -> Result<Num, LError> {
        let q = self.q();
        let x = Num::ratio(1, q);
        if self.l.function.pole_order(&x) > 0 {
            return Err(LError::PoleAtOne);
        }
        let norm = Num::int(q).pow(self.level.degree().unwrap_or(0) as i64);
        Ok(&(&(&Num::int(q) * &norm) * &self.l.function.eval(&x)?) * &Num::ratio(1, 1 - q * q))
    }

    /// JSON record with exact coefficients and special values.
    pub fn to_json(&self) -> String {
        let doc = PhiJson {
            f: &self.f,
            g: &self.g,
            level: self.level.to_string(),
            hypothesis: self.hypothesis,
            l_numerator: coeff_strings(self.l.function.numerator()),
            l_denominator: coeff_strings(self.l.function.denominator()),
            numerator: coeff_strings(self.rational.numerator()),
            denominator: coeff_strings(self.rational.denominator()),
            functional_equation: self.satisfies_functional_equation(),
            phi_at_0: self.value_at_zero().map(|v| v.to_string()).map_err(|e| e.to_string()),
            phi_at_1: self.value_at_one().map(|v| v.to_string()).map_err(|e| e.to_string()),
        };
        serde_json::to_string_pretty(&doc).expect("phi serializes")
    }
}
