//! The ∞-adic regulator of a motivic element as a one-cycle on the special fibre.

use num_bigint::BigInt;

use bruhat_tits::{QuotientGraph, Vertex};
use cusp_units::{Curve, MotivicElement};
use fq_algebra::Num;

use crate::cycles::{GlobalSymbol, OneCycle, Site};
use crate::error::FibreError;
use crate::local::{diagonal_origin, diagonal_terminus};

/// log_q|u| at every finite vertex representative.
pub fn log_table(xi: &MotivicElement, unit: &cusp_units::UnitExpr, graph: &QuotientGraph) -> Result<Vec<BigInt>, FibreError> {
    let reps: Vec<&Vertex> = graph.finite_vertices().iter().map(|r| &r.representative).collect();
    reps.iter().map(|v| Ok(unit.log_abs(xi.level(), v)?)).collect()
}

/// Σ_terms Σ_v log|f|(v) Y_v, with each diagonal component replaced by its total
/// transform at the sites (e, e). The diagonal passes |Stab e| times through the
/// site (e, e) of the quotient, which is recorded as that multiplicity.
///
/// `anchor_shift` is added to the log of the diagonal unit at every vertex, which
/// models moving the normalization point of the log table.
pub fn regulator(xi: &MotivicElement, graph: &QuotientGraph, anchor_shift: i64) -> Result<OneCycle, FibreError> {
    if xi.level().poly() != graph.level() {
        return Err(FibreError::LevelMismatch(xi.level().poly().to_string(), graph.level().to_string()));
    }
    let mut r = OneCycle::zero();
    for term in xi.terms() {
        let logs = log_table(xi, &term.unit, graph)?;
        let sign = Num::int(term.sign);
        match term.curve {
            Curve::Diagonal => {
                let value = |v: usize| Num::bigint(&logs[v] + BigInt::from(anchor_shift));
                for (i, e) in graph.finite_edges().iter().enumerate() {
                    let (o, t) = e.endpoints;
                    let m = &sign * &Num::int(e.stabilizer_order as i64);
                    let site = Site { first: i, second: i };
                    r.add_local(site, &(&m * &value(o)), &diagonal_origin());
                    r.add_local(site, &(&m * &value(t)), &diagonal_terminus());
                }
            }
            curve => {
                for (v, l) in logs.iter().enumerate() {
                    r.add_global(GlobalSymbol::Fibre { curve, vertex: v }, &(&sign * &Num::bigint(l.clone())));
                }
            }
        }
    }
    Ok(r)
}
