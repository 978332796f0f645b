//! The special value of Φ at s = 0 computed three ways.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use bruhat_tits::QuotientGraph;
use cochain_forms::{Cochain, CuspSpace, Eigenform, MeasureWeights};
use cusp_units::{build_xi, Level, MotivicElement};
use eisenstein_delta::LogDeltaTable;
use fq_algebra::Num;
use lfunction::{phi_fn, Hypothesis};

use crate::cycles::{pairing, site_weight, SpecialCycle};
use crate::error::FibreError;
use crate::local::local_pairing;
use crate::regulator::regulator;

/// Σ_{e ∈ Y⁺} (log|Δ_I|(o e) + log|Δ_I|(t e)) f(e) g(e) μ⁺(e), over the stored edge orientations.
pub fn closed_form(graph: &QuotientGraph, table: &LogDeltaTable, f: &Cochain, g: &Cochain) -> Num {
    let measure = MeasureWeights::new(graph);
    graph
        .finite_edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !f.values()[*i].is_zero() && !g.values()[*i].is_zero())
        .map(|(i, e)| {
            let (o, t) = e.endpoints;
            let logs = Num::bigint(table.value(o) + table.value(t));
            &(&logs * &(&f.values()[i] * &g.values()[i])) * &Num::rational(measure.mu_plus(i))
        })
        .sum()
}

/// One edge's share of the analytic sum and of the scaled pairing.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeDiagnostic {
    /// Index of the finite edge.
    pub edge: usize,
    /// |Stab(e)|.
    pub stabilizer_order: u64,
    /// Contribution to B.
    pub analytic: Num,
    /// Contribution to C.
    pub pairing_scaled: Num,
}

/// Wall-clock time spent on each route, in milliseconds.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub l_function_ms: u128,
    pub analytic_ms: u128,
    pub regulator_ms: u128,
}

/// Outcome of comparing the three routes for one pair of forms.
#[derive(Clone, Debug, Serialize)]
pub struct MainReport {
    pub q: u32,
    pub level: String,
    pub f: String,
    pub g: String,
    pub hypothesis: Hypothesis,
    pub kappa: i64,
    /// (A) Φ(0) from the rational function.
    pub phi0: Num,
    /// (B) -q/(q-1) times the closed-form sum.
    pub analytic_sum: Num,
    /// (C) q/(2(q-1)κ) times (r, Z).
    pub pairing_scaled: Num,
    /// (r, Z) itself.
    pub pairing: Num,
    /// (r, Z)/(2κ(q²-1)), the normalization under which the pairing reproduces Φ(0).
    pub pairing_normalized: Num,
    pub a_equals_b: bool,
    pub b_equals_c: bool,
    pub a_equals_c: bool,
    /// A equals (r, Z)/(2κ(q²-1)).
    pub a_equals_normalized: bool,
    /// Edges where B and C disagree locally; empty when the routes agree edge by edge.
    pub mismatched_edges: Vec<EdgeDiagnostic>,
    /// True if every mismatched edge has a nontrivial stabilizer.
    pub mismatch_only_at_stabilizers: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl MainReport {
    /// All three quantities agree.
    pub fn all_equal(&self) -> bool {
        self.a_equals_b && self.b_equals_c
    }
    /// The report without timings, for reproducible output.
    pub fn without_timings(mut self) -> Self {
        self.timings = None;
        self
    }
    /// Pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Inputs shared by every pair at one level.
pub struct LevelData {
    pub level: Level,
    pub graph: std::sync::Arc<QuotientGraph>,
    pub table: LogDeltaTable,
    pub xi: MotivicElement,
}

impl LevelData {
    /// Builds the log table and motivic element on the graph of `space`.
    pub fn new(space: &CuspSpace) -> Result<Self, FibreError> {
        let graph = space.graph().clone();
        let level = Level::new(graph.level())?;
        let table = LogDeltaTable::modular_unit(&graph)?;
        let xi = build_xi(&level)?;
        Ok(LevelData { level, graph, table, xi })
    }
}

/// Computes A, B and C for `f`, `g` and compares them.
///
/// `anchor_shift` is added to the diagonal log table before pairing.
pub fn verify_main_theorem(
    space: &CuspSpace,
    f: &Eigenform,
    g: &Eigenform,
    anchor_shift: i64,
) -> Result<MainReport, FibreError> {
    let data = LevelData::new(space)?;
    verify_with(&data, f, g, anchor_shift)
}

/// [`verify_main_theorem`] with precomputed level data.
pub fn verify_with(data: &LevelData, f: &Eigenform, g: &Eigenform, anchor_shift: i64) -> Result<MainReport, FibreError> {
    if f.level() != g.level() || f.level() != data.graph.level() {
        return Err(FibreError::LevelMismatch(f.level().to_string(), g.level().to_string()));
    }
    let graph = &*data.graph;
    let q = graph.field().q();
    let qn = Num::int(i64::from(q));
    let kappa = data.level.kappa();
    let (fc, gc) = (f.cochain(), g.cochain());

    let clock = Instant::now();
    let phi = phi_fn(f, g)?;
    let hypothesis = phi.hypothesis();
    let phi0 = phi.value_at_zero()?;
    let l_function_ms = clock.elapsed().as_millis();

    let clock = Instant::now();
    let b_factor = -&(&qn / &Num::int(i64::from(q) - 1));
    let analytic_sum = &b_factor * &closed_form(graph, &data.table, fc, gc);
    let analytic_ms = clock.elapsed().as_millis();

    let clock = Instant::now();
    let r = regulator(&data.xi, graph, anchor_shift)?;
    let z = SpecialCycle::new(fc, gc);
    let pair = pairing(graph, &r, &z);
    let c_factor = &qn / &Num::int(2 * (i64::from(q) - 1) * kappa);
    let pairing_scaled = &c_factor * &pair;
    let regulator_ms = clock.elapsed().as_millis();
    let pairing_normalized = &pair / &Num::int(2 * kappa * (i64::from(q * q) - 1));

    let measure = MeasureWeights::new(graph);
    let mut mismatched_edges = Vec::new();
    for (i, e) in graph.finite_edges().iter().enumerate() {
        let site = crate::cycles::Site { first: i, second: i };
        let k = z.coefficient(&site);
        if k.is_zero() {
            continue;
        }
        let (o, t) = e.endpoints;
        let logs = Num::bigint(data.table.value(o) + data.table.value(t));
        let analytic = &b_factor * &(&(&logs * &k) * &Num::rational(measure.mu_plus(i)));
        let local = r.at(&site).map_or_else(Num::zero, local_pairing);
        let scaled = &c_factor * &(&(&k * &site_weight(graph, &site)) * &local);
        if analytic != scaled {
            mismatched_edges.push(EdgeDiagnostic {
                edge: i,
                stabilizer_order: e.stabilizer_order,
                analytic,
                pairing_scaled: scaled,
            });
        }
    }
    let mismatch_only_at_stabilizers =
        !mismatched_edges.is_empty() && mismatched_edges.iter().all(|d| d.stabilizer_order > 1);

    Ok(MainReport {
        q,
        level: graph.level().to_string(),
        f: f.label(),
        g: g.label(),
        hypothesis,
        kappa,
        a_equals_b: phi0 == analytic_sum,
        b_equals_c: analytic_sum == pairing_scaled,
        a_equals_c: phi0 == pairing_scaled,
        a_equals_normalized: phi0 == pairing_normalized,
        phi0,
        analytic_sum,
        pairing_scaled,
        pairing: pair,
        pairing_normalized,
        mismatched_edges,
        mismatch_only_at_stabilizers,
        timings: Some(Timings { l_function_ms, analytic_ms, regulator_ms }),
    })
}

/// Log table of Δ_I^κ read off the motivic element's diagonal term, for cross-checking the two log routes.
pub fn diagonal_logs(data: &LevelData) -> Result<Vec<BigInt>, FibreError> {
    let term = &data.xi.terms()[0];
    crate::regulator::log_table(&data.xi, &term.unit, &data.graph)
}
