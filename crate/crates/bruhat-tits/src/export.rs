//! DOT and JSON renderings of a quotient graph.

use std::fmt::Write;

use serde::Serialize;

use crate::quotient::{OrbitId, QuotientGraph};

/// Version tag of the JSON layout; bump when fields change.
pub const GRAPH_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct JsonVertex {
    id: usize,
    orbit: OrbitId,
    representative: String,
    stabilizer_order: u64,
    finite: bool,
}

#[derive(Serialize)]
struct JsonEdge {
    id: usize,
    orbit: OrbitId,
    representative: String,
    stabilizer_order: u64,
    origin: usize,
    terminus: usize,
}

#[derive(Serialize)]
struct JsonEnd {
    cusp: String,
    ray: Vec<usize>,
}

/// Serializable summary of a quotient graph.
#[derive(Serialize)]
pub struct GraphJson {
    schema_version: u32,
    q: u32,
    level: String,
    cusp_level: usize,
    betti: usize,
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
    ends: Vec<JsonEnd>,
}

impl GraphJson {
    /// Collects the summary.
    pub fn from_graph(g: &QuotientGraph) -> Self {
        GraphJson {
            schema_version: GRAPH_SCHEMA_VERSION,
            q: g.field().q(),
            level: g.level().to_string(),
            cusp_level: g.cusp_level(),
            betti: g.betti(),
            vertices: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(id, v)| JsonVertex {
                    id,
                    orbit: v.id,
                    representative: v.representative.to_string(),
                    stabilizer_order: v.stabilizer_order,
                    finite: v.is_finite_part,
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(id, e)| JsonEdge {
                    id,
                    orbit: e.id,
                    representative: e.representative.to_string(),
                    stabilizer_order: e.stabilizer_order,
                    origin: e.endpoints.0,
                    terminus: e.endpoints.1,
                })
                .collect(),
            ends: g.ends().iter().map(|e| JsonEnd { cusp: e.cusp.to_string(), ray: e.ray.clone() }).collect(),
        }
    }
}

/// Graphviz rendering of the finite part plus the first vertex of each end.
pub fn to_dot(g: &QuotientGraph) -> String {
    let mut s = String::new();
    writeln!(s, "graph quotient {{").unwrap();
    writeln!(s, "  label=\"q={} I={}\";", g.field().q(), g.level()).unwrap();
    let n_finite = g.finite_vertices().len();
    for (i, v) in g.finite_vertices().iter().enumerate() {
        writeln!(s, "  v{i} [label=\"{}:{} |Stab|={}\"];", v.id.level, v.id.index, v.stabilizer_order).unwrap();
    }
    for e in g.finite_edges() {
        writeln!(s, "  v{} -- v{} [label=\"{}\"];", e.endpoints.0, e.endpoints.1, e.stabilizer_order).unwrap();
    }
    for (j, end) in g.ends().iter().enumerate() {
        let first = end.ray[0];
        debug_assert!(first < n_finite);
        writeln!(s, "  cusp{j} [shape=plaintext,label=\"P_{{{}}}\"];", end.cusp).unwrap();
        writeln!(s, "  v{first} -- cusp{j} [style=dashed];").unwrap();
    }
    writeln!(s, "}}").unwrap();
    s
}
