//! Integer-valued log_q|Δ| on the tree and log_q|Δ_I| on quotient graphs.
//!
//! log|Δ| is integrated from its edge derivative q(1-q)F̃(e) along the path
//! from v(0,0), where it is normalized to 0. The modular unit
//! Δ_I = Π_{d|I} Δ((I/d)τ)^{μ(d)} has weight 0, so its table descends to the
//! quotient by Γ₀(I).

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use bruhat_tits::{Edge, OrbitId, QuotientGraph, Vertex};
use fq_algebra::{arith, LaurentK, PolyA};

use crate::error::EisError;
use crate::series::{f_tilde, scale_vertex};

fn to_integer(x: BigRational) -> Result<BigInt, EisError> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(EisError::NotIntegral(x.to_string()))
    }
}

/// The edge derivative of log_q|Δ|: log|Δ|(t(e)) - log|Δ|(o(e)) = q(1-q)F̃(e).
pub fn dlog_delta(e: &Edge) -> Result<BigInt, EisError> {
    let q = i64::from(e.origin().field().q());
    to_integer(f_tilde(e)? * BigRational::from_integer((q * (1 - q)).into()))
}

/// (1-q)F̃(e), a rational multiple 1/q of [`dlog_delta`].
pub fn dlog_delta_unscaled(e: &Edge) -> Result<BigRational, EisError> {
    let q = i64::from(e.origin().field().q());
    Ok(f_tilde(e)? * BigRational::from_integer((1 - q).into()))
}

/// log_q|Δ|(v), normalized by log_q|Δ|(v(0,0)) = 0.
pub fn log_delta(v: &Vertex) -> Result<BigInt, EisError> {
    let f = v.field();
    let k = v.k();
    let j0 = [Some(0), Some(k), v.u().valuation()?].into_iter().flatten().min().unwrap_or(0);
    let zero = LaurentK::zero(f);
    let mut s = BigInt::zero();
    // up from v(0,0) to v(j0, 0) = v(j0, u), then down to v(k, u)
    for i in j0 + 1..=0 {
        s += dlog_delta(&Edge::new(Vertex::new(i, &zero), true))?;
    }
    for i in j0 + 1..=k {
        s -= dlog_delta(&Edge::new(Vertex::new(i, v.u()), true))?;
    }
    Ok(s)
}

/// log_q|Δ(a τ)| at v, i.e. log_q|Δ| at diag(a, 1) v.
pub fn log_delta_scaled(a: &PolyA, v: &Vertex) -> Result<BigInt, EisError> {
    log_delta(&scale_vertex(a, v)?)
}

/// log_q|Δ_I|(v) = Σ_{d|I} μ(d) log_q|Δ((I/d)τ)|(v).
pub fn log_delta_level(level: &PolyA, v: &Vertex) -> Result<BigInt, EisError> {
    if !level.is_monic() || !arith::is_squarefree(level) {
        return Err(EisError::BadLevel(level.to_string()));
    }
    let mut s = BigInt::zero();
    for d in arith::monic_divisors(level)? {
        let mu = arith::moebius(&d)?;
        if mu != 0 {
            s += log_delta_scaled(&level.quo(&d), v)? * i64::from(mu);
        }
    }
    Ok(s)
}

/// Which discriminant a table records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// log_q|Δ(a τ)| at representatives (not Γ₀(I)-invariant).
    Scaled(PolyA),
    /// log_q|Δ_I|, Γ₀(I)-invariant.
    ModularUnit,
}

/// Values on the finite vertices of a quotient graph, anchored at v(0,0).
#[derive(Clone, Debug)]
pub struct LogDeltaTable {
    level: PolyA,
    kind: TableKind,
    ids: Vec<OrbitId>,
    values: Vec<BigInt>,
}

#[derive(Serialize)]
struct TableRow<'a> {
    vertex: &'a OrbitId,
    value: String,
}

#[derive(Serialize)]
struct TableJson<'a> {
    level: String,
    kind: String,
    anchor: &'static str,
    values: Vec<TableRow<'a>>,
}

impl LogDeltaTable {
    /// log_q|Δ(a τ)| at the representative of every finite vertex.
    pub fn scaled(a: &PolyA, g: &QuotientGraph) -> Result<Self, EisError> {
        Self::build(g, TableKind::Scaled(a.clone()), |v| log_delta_scaled(a, v))
    }

    /// log_q|Δ_I| on the finite vertices of Γ₀(I)\𝒯.
    pub fn modular_unit(g: &QuotientGraph) -> Result<Self, EisError> {
        let level = g.level().clone();
        Self::build(g, TableKind::ModularUnit, |v| log_delta_level(&level, v))
    }

    fn build(g: &QuotientGraph, kind: TableKind, f: impl Fn(&Vertex) -> Result<BigInt, EisError>) -> Result<Self, EisError> {
        let recs = g.finite_vertices();
        let values = recs.iter().map(|r| f(&r.representative)).collect::<Result<_, _>>()?;
        Ok(LogDeltaTable { level: g.level().clone(), kind, ids: recs.iter().map(|r| r.id).collect(), values })
    }

    /// The level of the quotient graph.
    pub fn level(&self) -> &PolyA {
        &self.level
    }
    /// What is tabulated.
    pub fn kind(&self) -> &TableKind {
        &self.kind
    }
    /// Values, aligned with the graph's finite vertices.
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
    /// The value at a finite vertex index.
    pub fn value(&self, i: usize) -> &BigInt {
        &self.values[i]
    }
    /// Orbit ids, aligned with [`values`](Self::values).
    pub fn ids(&self) -> &[OrbitId] {
        &self.ids
    }

    /// Checks that every finite edge lift reproduces the table difference, which
    /// makes the table well defined on the quotient and all its cycle sums vanish.
    pub fn verify_on_edges(&self, g: &QuotientGraph) -> Result<(), EisError> {
        if let TableKind::Scaled(a) = &self.kind {
            return Err(EisError::NotInvariant(a.to_string()));
        }
        let f = |v: &Vertex| log_delta_level(&self.level, v);
        for rec in g.finite_edges() {
            let (o, t) = rec.endpoints;
            let e = &rec.representative;
            let integrated = f(&e.terminus())? - f(&e.origin())?;
            let table = &self.values[t] - &self.values[o];
            if integrated != table {
                return Err(EisError::PathDependence {
                    edge: format!("{:?}", rec.id),
                    table: table.to_string(),
                    integrated: integrated.to_string(),
                });
            }
        }
        Ok(())
    }

    /// JSON dump.
    pub fn to_json(&self) -> String {
        let kind = match &self.kind {
            TableKind::Scaled(a) => format!("log|Delta({a} tau)|"),
            TableKind::ModularUnit => "log|Delta_I|".to_string(),
        };
        let doc = TableJson {
            level: self.level.to_string(),
            kind,
            anchor: "v(0,0)",
            values: self.ids.iter().zip(&self.values).map(|(id, v)| TableRow { vertex: id, value: v.to_string() }).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("table serializes")
    }

    /// CSV dump with header `level,index,value`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("level,index,value\n");
        for (id, v) in self.ids.iter().zip(&self.values) {
            s.push_str(&format!("{},{},{}\n", id.level, id.index, v));
        }
        s
    }
}

/// Sums of ∂log|Δ| (evaluated on the stored edge lifts) around a cycle basis of the finite part.
///
/// Δ has weight q² - 1, so these sums are (q² - 1) times automorphy exponents and need not vanish.
pub fn dlog_cycle_sums(g: &QuotientGraph) -> Result<Vec<BigInt>, EisError> {
    let weights: Vec<BigInt> = g.finite_edges().iter().map(|e| dlog_delta(&e.representative)).collect::<Result<_, _>>()?;
    Ok(cycle_sums(g, &weights))
}

/// Sums of ∂log|Δ_I| (integrated along each stored edge lift) around a cycle basis of the finite part.
pub fn dlog_level_cycle_sums(g: &QuotientGraph) -> Result<Vec<BigInt>, EisError> {
    let level = g.level();
    let weights: Vec<BigInt> = g
        .finite_edges()
        .iter()
        .map(|e| {
            let e = &e.representative;
            Ok(log_delta_level(level, &e.terminus())? - log_delta_level(level, &e.origin())?)
        })
        .collect::<Result<_, EisError>>()?;
    Ok(cycle_sums(g, &weights))
}

/// Sums of an edge cochain around the fundamental cycles of a BFS spanning forest.
pub fn cycle_sums(g: &QuotientGraph, weights: &[BigInt]) -> Vec<BigInt> {
    let nv = g.finite_vertices().len();
    let edges = g.finite_edges();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for (i, e) in edges.iter().enumerate() {
        adj[e.endpoints.0].push((i, e.endpoints.1));
        adj[e.endpoints.1].push((i, e.endpoints.0));
    }
    let mut potential: Vec<Option<BigInt>> = vec![None; nv];
    let mut tree_edge = vec![false; edges.len()];
    for root in 0..nv {
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some(BigInt::zero());
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(i, y) in &adj[x] {
                if potential[y].is_none() {
                    let px = potential[x].clone().expect("visited");
                    let py = if edges[i].endpoints.0 == x { px + &weights[i] } else { px - &weights[i] };
                    potential[y] = Some(py);
                    tree_edge[i] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    edges
        .iter()
        .enumerate()
        .filter(|(i, _)| !tree_edge[*i])
        .map(|(i, e)| {
            let po = potential[e.endpoints.0].as_ref().expect("visited");
            let pt = potential[e.endpoints.1].as_ref().expect("visited");
            po + &weights[i] - pt
        })
        .collect()
}
