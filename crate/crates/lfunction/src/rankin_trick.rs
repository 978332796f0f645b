//! Unfolding check: ζ_I(2s) ⟨f E_I(·,s), g⟩ = q^{1-2s} L_∞(s+1) L_{f,g}(s).
//!
//! The left side is a finite sum over the finite quotient edges. Both
//! orientations of an edge carry the same μ f g, and E_I(e) + E_I(ē) is
//! 2t/(1+t) times the sum of E_I at the two endpoints.

use serde::Serialize;

use cochain_forms::{Cochain, CuspSpace, Eigenform};
use eisenstein_delta::{edge_factor, eisenstein_ei, RationalT};
use fq_algebra::Num;

use crate::error::LError;
use crate::rankin::rankin_l;
use crate::zeta::{l_infinity_shifted, zeta_i_double};

/// ζ_I(2s) Σ_e μ(e) f(e) g(e) E_I(e, s), summed over oriented finite edges.
pub fn rankin_lhs(space: &CuspSpace, f: &Cochain, g: &Cochain) -> Result<RationalT, LError> {
    let graph = space.graph();
    let level = space.level();
    let mut sum = RationalT::zero();
    for (i, rec) in graph.finite_edges().iter().enumerate() {
        let w = &(&f.values()[i] * &g.values()[i]) * &Num::rational(space.measure().mu(i).clone());
        if w.is_zero() {
            continue;
        }
        let e = &rec.representative;
        let ends = &eisenstein_ei(&e.origin(), level)? + &eisenstein_ei(&e.terminus(), level)?;
        sum = &sum + &(&RationalT::constant(w) * &ends);
    }
    Ok(&(&zeta_i_double(level)? * &edge_factor()) * &sum)
}

/// q t² / (1 - t/q) times L.
pub fn rankin_rhs(q: u32, l: &RationalT) -> RationalT {
    &(&RationalT::monomial(Num::int(i64::from(q)), 2) * &l_infinity_shifted(q)) * l
}

/// Both sides for one pair of eigenforms.
#[derive(Clone, Debug, Serialize)]
pub struct RankinTrickReport {
    /// First form label.
    pub f: String,
    /// Second form label.
    pub g: String,
    /// Left side.
    pub lhs: RationalT,
    /// Right side.
    pub rhs: RationalT,
    /// Exact equality.
    pub holds: bool,
}

/// Compares both sides exactly; `space` is the cusp space of the common ambient level.
pub fn rankin_trick_check(space: &CuspSpace, f: &Eigenform, g: &Eigenform) -> Result<RankinTrickReport, LError> {
    let lhs = rankin_lhs(space, f.cochain(), g.cochain())?;
    let l = rankin_l(f, g)?;
    let rhs = rankin_rhs(space.level().field().q(), &l.function);
    Ok(RankinTrickReport { f: f.label(), g: g.label(), holds: lhs == rhs, lhs, rhs })
}
