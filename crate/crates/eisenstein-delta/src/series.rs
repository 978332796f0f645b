//! Eisenstein series E(v,s), F(e,s) and their relatives as functions of t = q^{-s}.
//!
//! Both series are GL2(A)-invariant, so a vertex or edge is first moved onto
//! the ray v_n = v(-n, 0) and the value is read off closed forms on the ray.

use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::BigRational;

use bruhat_tits::{gamma_act, gl2a_reduce, gl2a_reduce_edge, Edge, MatA, Vertex};
use fq_algebra::{arith, Num, NumPoly, PolyA};

use crate::error::EisError;
use crate::rational_t::RationalT;

fn c(x: i64) -> RationalT {
    RationalT::constant(Num::int(x))
}

/// 1 - a t^k.
fn one_minus(a: i64, k: usize) -> RationalT {
    RationalT::from_poly(&NumPoly::from_ints(&[1]) - &NumPoly::monomial(Num::int(a), k))
}

/// The pieces A and B shared by E and F on the ray.
fn ray_parts(q: i64, n: i64) -> (RationalT, RationalT) {
    let tn = RationalT::t_pow(n);
    let tmn = RationalT::t_pow(-n);
    let qq = Num::int(q);
    let q2t2 = RationalT::monomial(&qq * &qq, 2);
    let geo_q2 = &q2t2 / &one_minus(q * q, 2);
    let qt2_pow = RationalT::monomial(qq.pow(n + 1), 2 * (n + 1));
    let geo_q = one_minus(q, 2);
    let a = &(&tn * &c(q.pow((n + 1) as u32) - 1)) + &(&(&c((q - 1) * q.pow(n as u32)) * &tn) * &geo_q2);
    let b1 = &(&(&c(q - 1) * &tmn) * &qt2_pow) / &geo_q;
    let b2 = &(&(&(&c((q - 1) * (q - 1)) * &tmn) * &qt2_pow) / &(&c(q) * &geo_q)) * &geo_q2;
    (a, &b1 + &b2)
}

static RAY_E: Mutex<Option<HashMap<(u32, i64), RationalT>>> = Mutex::new(None);

/// E(v_n, s) on the ray vertex v_n.
pub fn ray_e(q: u32, n: i64) -> RationalT {
    if let Some(v) = RAY_E.lock().expect("cache").get_or_insert_with(HashMap::new).get(&(q, n)) {
        return v.clone();
    }
    let (a, b) = ray_parts(i64::from(q), n);
    let v = &(&(&RationalT::t_pow(-n) + &RationalT::t_pow(n)) + &a) + &b;
    RAY_E.lock().expect("cache").get_or_insert_with(HashMap::new).insert((q, n), v.clone());
    v
}

/// F(ε_n, s) on the positive ray edge ε_n from v_n to v_{n+1}.
pub fn ray_f(q: u32, n: i64) -> RationalT {
    let (a, b) = ray_parts(i64::from(q), n);
    let t = RationalT::t_pow(1);
    &(&(&RationalT::t_pow(-n) - &RationalT::t_pow(n + 1)) - &(&t * &a)) + &b
}

/// E(v, s) for any tree vertex.
pub fn eisenstein_e(v: &Vertex) -> Result<RationalT, EisError> {
    let (n, _) = gl2a_reduce(v)?;
    Ok(ray_e(v.field().q(), n))
}

/// F(e, s) for any oriented tree edge.
pub fn f_series(e: &Edge) -> Result<RationalT, EisError> {
    let r = gl2a_reduce_edge(e)?;
    let f = ray_f(e.origin().field().q(), r.level);
    Ok(if r.sign == 1 { f } else { -f })
}

static F_AT_ONE: Mutex<Option<HashMap<(u32, i64), BigRational>>> = Mutex::new(None);

/// F(ε_n, 1), the value of the ray function at t = 1/q.
pub fn ray_f_at_one(q: u32, n: i64) -> Result<BigRational, EisError> {
    if let Some(v) = F_AT_ONE.lock().expect("cache").get_or_insert_with(HashMap::new).get(&(q, n)) {
        return Ok(v.clone());
    }
    let x = Num::ratio(1, i64::from(q));
    let v = ray_f(q, n).eval(&x)?.to_rational().expect("rational coefficients");
    F_AT_ONE.lock().expect("cache").get_or_insert_with(HashMap::new).insert((q, n), v.clone());
    Ok(v)
}

/// F(e, 1) for any oriented edge.
pub fn f_at_one(e: &Edge) -> Result<BigRational, EisError> {
    let r = gl2a_reduce_edge(e)?;
    let v = ray_f_at_one(e.origin().field().q(), r.level)?;
    Ok(if r.sign == 1 { v } else { -v })
}

/// The improper series F̃(e) = F(e,1) + sgn(e)(q+1)/(2q).
pub fn f_tilde(e: &Edge) -> Result<BigRational, EisError> {
    let q = i64::from(e.origin().field().q());
    let shift = BigRational::new((q + 1).into(), (2 * q).into());
    let v = f_at_one(e)?;
    Ok(if e.is_positive() { v + shift } else { v - shift })
}

/// L_∞(s) = 1/(1 - t).
pub fn l_infinity() -> RationalT {
    &RationalT::one() / &one_minus(1, 1)
}

/// The factor 2t/(1+t) relating the vertex series to the edge series.
pub fn edge_factor() -> RationalT {
    RationalT::new(NumPoly::from_ints(&[0, 2]), NumPoly::from_ints(&[1, 1]))
}

/// E(e, s) = 2t/(1+t) E(o(e), s).
pub fn edge_eisenstein(e: &Edge) -> Result<RationalT, EisError> {
    Ok(&edge_factor() * &eisenstein_e(&e.origin())?)
}

/// Λ(e, s) = -L_∞(s) E(e, s).
pub fn lambda_fn(e: &Edge) -> Result<RationalT, EisError> {
    Ok(-(&l_infinity() * &edge_eisenstein(e)?))
}

/// -L_∞(s) 2t/(1+t) E(v, s), the completed series attached to a vertex.
pub fn lambda_vertex(v: &Vertex) -> Result<RationalT, EisError> {
    Ok(-(&(&l_infinity() * &edge_factor()) * &eisenstein_e(v)?))
}

/// -L_∞(s) E(o(e), s), the completion with the edge series read as the origin's series.
pub fn lambda_origin(e: &Edge) -> Result<RationalT, EisError> {
    Ok(-(&l_infinity() * &eisenstein_e(&e.origin())?))
}

/// The vertex `diag(a, 1) v`.
pub fn scale_vertex(a: &PolyA, v: &Vertex) -> Result<Vertex, EisError> {
    let m = MatA::diag(a.clone(), PolyA::one(a.field()));
    Ok(gamma_act(&m.to_k(), v)?)
}

/// The Γ₀(I) Eisenstein series, from the level-one series at the vertices (I/d) v.
pub fn eisenstein_ei(v: &Vertex, level: &PolyA) -> Result<RationalT, EisError> {
    if !level.is_monic() || !arith::is_squarefree(level) {
        return Err(EisError::BadLevel(level.to_string()));
    }
    let mut sum = RationalT::zero();
    for d in arith::monic_divisors(level)? {
        let mu = arith::moebius(&d)?;
        if mu == 0 {
            continue;
        }
        let w = scale_vertex(&level.quo(&d), v)?;
        let term = &RationalT::monomial(Num::int(i64::from(mu)), d.degree().unwrap_or(0) as i64) * &eisenstein_e(&w)?;
        sum = &sum + &term;
    }
    let mut local = RationalT::one();
    for p in arith::squarefree_primes(level)? {
        local = &local * &one_minus(1, 2 * p.degree().unwrap_or(0));
    }
    Ok(&(&sum * &RationalT::t_pow(level.degree().unwrap_or(0) as i64)) / &local)
}
