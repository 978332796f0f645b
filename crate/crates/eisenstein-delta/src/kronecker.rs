//! Constant terms of the completed Eisenstein series at s = 1 against log|Δ|.
//!
//! The residue at s = 1 does not depend on the vertex, so for two vertices the
//! difference Λ(v,s) - Λ(v',s) is regular at t = 1/q and its value there is
//! the difference of the constant terms. Two candidate right-hand sides are
//! compared exactly:
//!
//! * `stated`: q/(1-q)·(ℓ(v) - ℓ(v')) - (q-1)/2·(k(v) - k(v')), with ℓ the
//!   logarithm integrated from (1-q)F̃;
//! * `weight_balanced`: 2/(q²-1)·(L(v) - L(v')) - (k(v) - k(v')), with L the
//!   integer-valued log_q|Δ|. This combination is GL2(A)-invariant because
//!   L has weight q²-1 and k shifts by 2 log_q|cτ+d|.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use bruhat_tits::{QuotientGraph, Vertex};
use fq_algebra::Num;

use crate::error::EisError;
use crate::logdelta::log_delta;
use crate::series::lambda_vertex;

/// One vertex pair.
#[derive(Clone, Debug, Serialize)]
pub struct KroneckerRow {
    /// Index of v among the finite vertices.
    pub first: usize,
    /// Index of v'.
    pub second: usize,
    /// [Λ(v) - Λ(v')] at t = 1/q.
    pub constant_difference: String,
    /// The stated right-hand side.
    pub stated: String,
    /// The weight-balanced right-hand side.
    pub weight_balanced: String,
}

/// Outcome over all pairs of finite vertices.
#[derive(Clone, Debug, Serialize)]
pub struct KroneckerReport {
    /// Level of the quotient graph.
    pub level: String,
    /// Number of vertex pairs compared.
    pub pairs: usize,
    /// Pairs where the stated coefficients fail.
    pub stated_failures: Vec<KroneckerRow>,
    /// Pairs where the weight-balanced identity fails.
    pub balanced_failures: Vec<KroneckerRow>,
}

impl KroneckerReport {
    /// True when the stated coefficients hold for every pair.
    pub fn stated_holds(&self) -> bool {
        self.stated_failures.is_empty()
    }
    /// True when the weight-balanced identity holds for every pair.
    pub fn balanced_holds(&self) -> bool {
        self.balanced_failures.is_empty()
    }
}

struct VertexData {
    lambda: crate::RationalT,
    log_delta: BigInt,
    k: i64,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Compares both right-hand sides on every pair of finite vertex representatives.
pub fn kronecker_check(g: &QuotientGraph) -> Result<KroneckerReport, EisError> {
    let verts: Vec<Vertex> = g.finite_vertices().iter().map(|r| r.representative.clone()).collect();
    kronecker_check_vertices(&g.level().to_string(), &verts, i64::from(g.field().q()))
}

/// The same comparison on an explicit vertex list.
pub fn kronecker_check_vertices(level: &str, verts: &[Vertex], q: i64) -> Result<KroneckerReport, EisError> {
    let data: Vec<VertexData> = verts
        .iter()
        .map(|v| Ok(VertexData { lambda: lambda_vertex(v)?, log_delta: log_delta(v)?, k: v.k() }))
        .collect::<Result<_, EisError>>()?;
    let x = Num::ratio(1, q);
    let mut report = KroneckerReport {
        level: level.to_string(),
        pairs: 0,
        stated_failures: Vec::new(),
        balanced_failures: Vec::new(),
    };
    for i in 0..data.len() {
        for j in 0..data.len() {
            let (a, b) = (&data[i], &data[j]);
            let lhs = (&a.lambda - &b.lambda).eval(&x)?.to_rational().expect("rational coefficients");
            let dl = BigRational::from_integer(&a.log_delta - &b.log_delta);
            let dk = BigRational::from_integer((a.k - b.k).into());
            let stated = &dl * rat(1, q) * rat(q, 1 - q) - &dk * rat(q - 1, 2);
            let balanced = &dl * rat(2, q * q - 1) - &dk;
            report.pairs += 1;
            let row = || KroneckerRow {
                first: i,
                second: j,
                constant_difference: lhs.to_string(),
                stated: stated.to_string(),
                weight_balanced: balanced.to_string(),
            };
            if lhs != stated {
                report.stated_failures.push(row());
            }
            if lhs != balanced {
                report.balanced_failures.push(row());
            }
        }
    }
    Ok(report)
}
