//! The Rankin-Selberg L-function of two normalized eigenforms.
//!
//! L_{f,g}(s) = ζ_I(2s) Σ_m c(f,m) c(g,m) |m|^{1-s}, summed over monic m. The
//! sum is expanded as an Euler product whose local factors are closed forms
//! in the Hecke eigenvalues, and the rational function is rebuilt from that
//! expansion over an a priori denominator.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use cochain_forms::{coefficients_up_to, Eigenform, Newform};
use eisenstein_delta::RationalT;
use fq_algebra::{arith, Num, NumPoly, PolyA};

use crate::error::LError;
use crate::zeta::zeta_i_double;

type CoefficientTable = Arc<BTreeMap<PolyA, Num>>;

type CoefficientCache = HashMap<(u32, String), (usize, CoefficientTable)>;

static COEFFICIENTS: Mutex<Option<CoefficientCache>> = Mutex::new(None);

/// c(f, m) for every monic m with deg m ≤ d, read from the character transform
/// at the newform's own level and cached per newform.
pub fn newform_coefficients(nf: &Newform, d: usize) -> Result<CoefficientTable, LError> {
    let key = (nf.level().field().q(), nf.label());
    if let Some((have, table)) = COEFFICIENTS.lock().expect("cache").get_or_insert_with(HashMap::new).get(&key) {
        if *have >= d {
            return Ok(table.clone());
        }
    }
    let table = Arc::new(coefficients_up_to(nf.space(), nf.cochain(), d)?);
    COEFFICIENTS.lock().expect("cache").get_or_insert_with(HashMap::new).insert(key, (d, table.clone()));
    Ok(table)
}

/// How the two forms behave at a prime.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Neither level is divisible by P.
    BothGood,
    /// P divides the new level of the first form only.
    FirstBad,
    /// P divides the new level of the second form only.
    SecondBad,
    /// P divides both new levels.
    BothBad,
}

/// The local sum Σ_n c(f,P^n) c(g,P^n) X^n as a rational function of X = |P|^{1-s}.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    /// The prime.
    pub prime: PolyA,
    /// Reduction type.
    pub reduction: Reduction,
    /// Numerator in X.
    pub numerator: NumPoly,
    /// Denominator in X.
    pub denominator: NumPoly,
}

impl LocalFactor {
    /// The factor from eigenvalues λ_f, λ_g (of T_P or U_P, normalized so that c(P) = λ/|P|).
    pub fn new(prime: &PolyA, reduction: Reduction, lambda_f: &Num, lambda_g: &Num) -> Result<Self, LError> {
        let norm = Num::int(prime.norm()? as i64);
        let n = norm.inv().expect("positive norm");
        let a = lambda_f * &n;
        let b = lambda_g * &n;
        let ab = &a * &b;
        let one = Num::one();
        let (numerator, denominator) = match reduction {
            Reduction::BothGood => {
                let n2 = &n * &n;
                let x2 = &(&n * &(&(&a * &a) + &(&b * &b))) - &(&Num::int(2) * &n2);
                (
                    NumPoly::new(vec![one.clone(), Num::zero(), -n2.clone()]),
                    NumPoly::new(vec![one, -ab.clone(), x2, -(&n2 * &ab), &n2 * &n2]),
                )
            }
            Reduction::FirstBad => (NumPoly::constant(one.clone()), NumPoly::new(vec![one, -ab, &(&a * &a) * &n])),
            Reduction::SecondBad => (NumPoly::constant(one.clone()), NumPoly::new(vec![one, -ab, &(&b * &b) * &n])),
            Reduction::BothBad => (NumPoly::constant(one.clone()), NumPoly::new(vec![one, -ab])),
        };
        Ok(LocalFactor { prime: prime.clone(), reduction, numerator, denominator })
    }

    /// The factor as a rational function of t, substituting X = (q t)^{deg P}.
    pub fn in_t(&self) -> RationalT {
        let d = self.prime.degree().unwrap_or(0);
        let q = Num::int(i64::from(self.prime.field().q()));
        let spread = |p: &NumPoly| {
            let mut c = vec![Num::zero(); p.coeffs().len().saturating_sub(1) * d + 1];
            for (i, x) in p.coeffs().iter().enumerate() {
                c[i * d] = x * &q.pow((i * d) as i64);
            }
            NumPoly::new(c)
        };
        RationalT::new(spread(&self.numerator), spread(&self.denominator))
    }

    /// Coefficients of t^0..=order of the local factor.
    pub fn series(&self, order: usize) -> Vec<Num> {
        let d = self.prime.degree().unwrap_or(0).max(1);
        let q = Num::int(i64::from(self.prime.field().q()));
        let x = self.numerator.series_div(&self.denominator, order / d + 1);
        let mut out = vec![Num::zero(); order + 1];
        for (i, c) in x.into_iter().enumerate() {
            if i * d <= order {
                out[i * d] = &c * &q.pow((i * d) as i64);
            }
        }
        out
    }
}

fn mul_truncated(a: &[Num], b: &[Num]) -> Vec<Num> {
    let n = a.len().min(b.len());
    let mut out = vec![Num::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// A pair of eigenforms of the same ambient level with compatible coefficient fields.
#[derive(Clone, Debug)]
pub struct FormPair<'a> {
    /// First form.
    pub f: &'a Eigenform,
    /// Second form.
    pub g: &'a Eigenform,
}

impl<'a> FormPair<'a> {
    /// Checks levels and fields.
    pub fn new(f: &'a Eigenform, g: &'a Eigenform) -> Result<Self, LError> {
        if f.level() != g.level() {
            return Err(LError::LevelMismatch(f.level().to_string(), g.level().to_string()));
        }
        let compatible = match (f.field(), g.field()) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a.modulus() == b.modulus(),
            _ => true,
        };
        if !compatible {
            return Err(LError::IncompatibleFields(f.label(), g.label()));
        }
        Ok(FormPair { f, g })
    }

    /// The ambient level I.
    pub fn level(&self) -> &PolyA {
        self.f.level()
    }

    /// True when both are pullbacks of one newform.
    pub fn same_newform(&self) -> bool {
        Arc::ptr_eq(self.f.newform(), self.g.newform())
    }

    fn reduction(&self, p: &PolyA) -> Reduction {
        match (self.f.new_level().divisible_by(p), self.g.new_level().divisible_by(p)) {
            (false, false) => Reduction::BothGood,
            (true, false) => Reduction::FirstBad,
            (false, true) => Reduction::SecondBad,
            (true, true) => Reduction::BothBad,
        }
    }

    /// The local factor at P, with λ_P = |P| c(·, P) read from the coefficient tables.
    pub fn local_factor(&self, p: &PolyA) -> Result<LocalFactor, LError> {
        let d = p.degree().unwrap_or(0);
        let tf = newform_coefficients(self.f.newform(), d)?;
        let tg = newform_coefficients(self.g.newform(), d)?;
        let norm = Num::int(p.norm()? as i64);
        LocalFactor::new(p, self.reduction(p), &(&tf[p] * &norm), &(&tg[p] * &norm))
    }

    /// Coefficients of t^0..=order of ζ_I(2s) times the Euler product over primes of degree ≤ order.
    pub fn euler_series(&self, order: usize) -> Result<Vec<Num>, LError> {
        newform_coefficients(self.f.newform(), order)?;
        newform_coefficients(self.g.newform(), order)?;
        let primes = arith::primes_up_to(self.level().field(), order);
        let factors: Vec<Vec<Num>> = primes
            .par_iter()
            .map(|p| Ok(self.local_factor(p)?.series(order)))
            .collect::<Result<_, LError>>()?;
        let mut acc = vec![Num::zero(); order + 1];
        acc[0] = Num::one();
        for s in &factors {
            acc = mul_truncated(&acc, s);
        }
        Ok(mul_truncated(&zeta_series(self.level(), order)?, &acc))
    }

    /// The same coefficients from the direct sum over all monic m with deg m ≤ order.
    pub fn dirichlet_series(&self, order: usize) -> Result<Vec<Num>, LError> {
        let tf = newform_coefficients(self.f.newform(), order)?;
        let tg = newform_coefficients(self.g.newform(), order)?;
        let q = Num::int(i64::from(self.level().field().q()));
        let mut s = vec![Num::zero(); order + 1];
        for (m, c) in tf.iter() {
            let d = m.degree().unwrap_or(0);
            if d <= order {
                s[d] = &s[d] + &(&(c * &tg[m]) * &q.pow(d as i64));
            }
        }
        Ok(mul_truncated(&zeta_series(self.level(), order)?, &s))
    }

    /// The a priori denominators tried in turn: the pole at s = 1 when the
    /// newforms agree, then additionally the denominators of the level
    /// Eisenstein series, (1+t)(1-qt²)²(1-q²t²).
    fn candidate_denominators(&self) -> Vec<NumPoly> {
        let q = i64::from(self.level().field().q());
        let base = if self.same_newform() { NumPoly::from_ints(&[1, -q]) } else { NumPoly::from_ints(&[1]) };
        let qt2 = NumPoly::from_ints(&[1, 0, -q]);
        let eis = &(&(&NumPoly::from_ints(&[1, 1]) * &qt2) * &qt2) * &NumPoly::from_ints(&[1, 0, -q * q]);
        vec![base.clone(), &base * &eis]
    }
}

/// An exact L-function together with the series length that certified it.
#[derive(Clone, Debug)]
pub struct RankinL {
    /// L_{f,g} as a rational function of t.
    pub function: RationalT,
    /// Highest power of t whose Euler-product coefficient was used.
    pub order: usize,
    /// Number of trailing coefficients of denominator × series that vanished beyond the numerator.
    pub spare_zeros: usize,
}

/// Extra vanishing coefficients required before a reconstruction is accepted.
pub const SPARE_ZEROS: usize = 3;

fn zeta_series(level: &PolyA, order: usize) -> Result<Vec<Num>, LError> {
    let z = zeta_i_double(level)?;
    let mut out = vec![Num::zero(); order + 1];
    for (e, c) in z.expansion(order as i64) {
        out[e as usize] = c;
    }
    Ok(out)
}

/// L_{f,g}(s) as an exact rational function of t = q^{-s}.
pub fn rankin_l(f: &Eigenform, g: &Eigenform) -> Result<RankinL, LError> {
    let pair = FormPair::new(f, g)?;
    let deg = pair.level().degree().unwrap_or(0);
    let start = (2 * deg).saturating_sub(1).max(6);
    let cap = 2 * deg + 14;
    let dens = pair.candidate_denominators();
    let mut order = start;
    while order <= cap {
        let series = pair.euler_series(order)?;
        for den in &dens {
            if let Some(l) = reconstruct(&series, den) {
                return Ok(RankinL { function: l.0, order, spare_zeros: l.1 });
            }
        }
        order += 1;
    }
    Err(LError::NotConverged(cap))
}

/// N/B when B·series truncates to a polynomial N with at least [`SPARE_ZEROS`] vanishing top coefficients.
pub fn reconstruct(series: &[Num], den: &NumPoly) -> Option<(RationalT, usize)> {
    let order = series.len() - 1;
    let prod = mul_truncated(series, &{
        let mut d = den.coeffs().to_vec();
        d.resize(order + 1, Num::zero());
        d
    });
    let top = prod.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    let spare = order - top;
    (spare >= SPARE_ZEROS).then(|| (RationalT::new(NumPoly::new(prod[..=top].to_vec()), den.clone()), spare))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fq_algebra::{parse_poly, Fq};

    fn recursion(lambda: &Num, norm: i64, bad: bool, n: usize) -> Vec<Num> {
        let inv = Num::ratio(1, norm);
        let mut c = vec![Num::one(), lambda * &inv];
        while c.len() < n {
            let k = c.len();
            let mut next = lambda * &c[k - 1];
            if !bad {
                next = &next - &c[k - 2];
            }
            c.push(&next * &inv);
        }
        c
    }

    #[test]
    fn closed_local_factors_solve_the_recursions() {
        let f = Fq::new(3).unwrap();
        let p = parse_poly(f, "T^2+1").unwrap();
        let (la, lb) = (Num::int(4), Num::int(-5));
        for (kind, bf, bg) in [
            (Reduction::BothGood, false, false),
            (Reduction::FirstBad, true, false),
            (Reduction::SecondBad, false, true),
            (Reduction::BothBad, true, true),
        ] {
            let lf = LocalFactor::new(&p, kind, &la, &lb).unwrap();
            let x = lf.numerator.series_div(&lf.denominator, 8);
            let cf = recursion(&la, 9, bf, 8);
            let cg = recursion(&lb, 9, bg, 8);
            for n in 0..8 {
                assert_eq!(x[n], &cf[n] * &cg[n], "{kind:?} X^{n}");
            }
            let den_deg = lf.in_t().denominator().degree().unwrap();
            assert!(den_deg <= 4 * 2);
        }
    }

    #[test]
    fn reconstruction_needs_spare_zeros() {
        let series: Vec<Num> = [1, 2, 3, 0, 0, 0].iter().map(|&x| Num::int(x)).collect();
        let (l, spare) = reconstruct(&series, &NumPoly::from_ints(&[1])).unwrap();
        assert_eq!(spare, 3);
        assert_eq!(l, RationalT::from_ints(&[1, 2, 3]));
        assert!(reconstruct(&series[..5], &NumPoly::from_ints(&[1])).is_none());
    }
}
