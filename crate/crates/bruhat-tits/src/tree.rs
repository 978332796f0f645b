//! Vertices and edges of the Bruhat-Tits tree of PGL2(K_∞).
//!
//! The vertex `v(k, u)` is the class of the lattice matrix `(π^k u; 0 1)` with
//! `u` reduced modulo `π^k O_∞`. The positively oriented edge `e(k, u)` runs
//! from `v(k, u)` to `v(k-1, u)`, i.e. toward the end ∞. The GL2(A)-quotient
//! is the ray `v_n = v(-n, 0)`, `n >= 0`, joined by the positive edges
//! `ε_n = e(-n, 0)`.

use std::fmt;

use fq_algebra::{Fe, Fq, LaurentK, PolyA};

use crate::error::TreeError;
use crate::matrix::{Mat2, MatA};

/// A vertex `v(k, u)` with `u` the canonical residue modulo `π^k O_∞`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    k: i64,
    u: LaurentK,
}

impl Vertex {
    /// `v(k, u)`; `u` must be exact and is reduced modulo `π^k`.
    pub fn new(k: i64, u: &LaurentK) -> Self {
        let u = u.truncated(k).expect("vertex residue must be known below exponent k");
        Vertex { k, u }
    }
    /// The GL2(A)-quotient ray vertex `v_n = v(-n, 0)`.
    pub fn ray(f: &'static Fq, n: i64) -> Self {
        Vertex { k: -n, u: LaurentK::zero(f) }
    }
    /// The standard vertex `v(0, 0)`.
    pub fn origin(f: &'static Fq) -> Self {
        Self::ray(f, 0)
    }
    /// The exponent k.
    pub fn k(&self) -> i64 {
        self.k
    }
    /// The residue u.
    pub fn u(&self) -> &LaurentK {
        &self.u
    }
    /// The coefficient field.
    pub fn field(&self) -> &'static Fq {
        self.u.field()
    }

    /// The q+1 neighbours: first `v(k-1, u)` (toward ∞), then `v(k+1, u + c π^k)` for c in F_q.
    pub fn neighbors(&self) -> Vec<Vertex> {
        let f = self.field();
        let mut out = Vec::with_capacity(f.q() as usize + 1);
        out.push(Vertex::new(self.k - 1, &self.u));
        for c in f.elements() {
            let u = &self.u + &LaurentK::monomial(f, c, self.k);
            out.push(Vertex { k: self.k + 1, u });
        }
        out
    }

    /// The neighbour toward ∞.
    pub fn toward_infinity(&self) -> Vertex {
        Vertex::new(self.k - 1, &self.u)
    }

    /// True if the two vertices are adjacent.
    pub fn adjacent(&self, other: &Vertex) -> bool {
        let (lo, hi) = if self.k < other.k { (self, other) } else { (other, self) };
        hi.k == lo.k + 1 && hi.toward_infinity() == *lo
    }

    /// Image under `g` in GL2(K_∞).
    pub fn act(&self, g: &Mat2) -> Result<Vertex, TreeError> {
        gamma_act(g, self)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v({}, {})", self.k, self.u)
    }
}
impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Action of `g` on a vertex by column reduction of `g (π^k u; 0 1)`.
pub fn gamma_act(g: &Mat2, v: &Vertex) -> Result<Vertex, TreeError> {
    let det = g.det();
    let det_ord = det.valuation()?.ok_or(TreeError::Singular)?;
    let f = v.field();
    let pik = LaurentK::monomial(f, Fe::ONE, v.k);
    let x = &(&g.c * &v.u) + &g.d;
    let y = &g.c * &pik;
    let ox = x.valuation()?;
    let oy = y.valuation()?;
    let lower_wins = match (oy, ox) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(a), Some(b)) => a >= b,
    };
    if lower_wins {
        let ox = ox.expect("checked");
        let k2 = v.k + det_ord - 2 * ox;
        let num = &(&g.a * &v.u) + &g.b;
        let u2 = num.div_to(&x, k2)?.assume_exact();
        Ok(Vertex::new(k2, &u2))
    } else {
        let oc = g.c.valuation()?.ok_or(TreeError::Singular)?;
        let k2 = det_ord - 2 * oc - v.k;
        let u2 = g.a.div_to(&g.c, k2)?.assume_exact();
        Ok(Vertex::new(k2, &u2))
    }
}

/// An oriented edge: `e(k, u)` itself when `positive`, its reversal otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    base: Vertex,
    positive: bool,
}

impl Edge {
    /// The edge with base vertex `v(k, u)` and the given orientation.
    pub fn new(base: Vertex, positive: bool) -> Self {
        Edge { base, positive }
    }
    /// The oriented edge from `a` to `b`; `None` if they are not adjacent.
    pub fn between(a: &Vertex, b: &Vertex) -> Option<Self> {
        if !a.adjacent(b) {
            return None;
        }
        Some(if b.k == a.k - 1 { Edge::new(a.clone(), true) } else { Edge::new(b.clone(), false) })
    }
    /// `ε_n = e(-n, 0)`, from `v_n` to `v_{n+1}`.
    pub fn ray(f: &'static Fq, n: i64) -> Self {
        Edge::new(Vertex::ray(f, n), true)
    }
    /// Base vertex `v(k, u)`.
    pub fn base(&self) -> &Vertex {
        &self.base
    }
    /// True for the orientation toward ∞.
    pub fn is_positive(&self) -> bool {
        self.positive
    }
    /// +1 or -1.
    pub fn sign(&self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }
    /// Origin.
    pub fn origin(&self) -> Vertex {
        if self.positive {
            self.base.clone()
        } else {
            self.base.toward_infinity()
        }
    }
    /// Terminus.
    pub fn terminus(&self) -> Vertex {
        if self.positive {
            self.base.toward_infinity()
        } else {
            self.base.clone()
        }
    }
    /// The same edge with opposite orientation.
    pub fn reversed(&self) -> Self {
        Edge::new(self.base.clone(), !self.positive)
    }
    /// Image under `g`.
    pub fn act(&self, g: &Mat2) -> Result<Edge, TreeError> {
        let o = gamma_act(g, &self.origin())?;
        let t = gamma_act(g, &self.terminus())?;
        Ok(Edge::between(&o, &t).expect("group elements preserve adjacency"))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.positive { "+" } else { "-" };
        write!(f, "{s}e({}, {})", self.base.k, self.base.u)
    }
}
impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

const REDUCTION_STEPS: usize = 100_000;

/// Finds `n >= 0` and `g` in GL2(A) with `g v = v_n`.
///
/// Alternates translation by the polynomial part of `u` with the involution
/// `(0 1; 1 0)`; each involution strictly lowers the depth of the residue.
pub fn gl2a_reduce(v: &Vertex) -> Result<(i64, MatA), TreeError> {
    let f = v.field();
    let w = MatA::swap(f);
    let wk = w.to_k();
    let mut g = MatA::identity(f);
    let mut cur = v.clone();
    for _ in 0..REDUCTION_STEPS {
        let (poly, frac) = cur.u.split_polynomial_part();
        if !poly.is_zero() {
            g = &MatA::upper(-&poly) * &g;
        }
        let k = cur.k;
        if frac.is_zero() {
            if k <= 0 {
                return Ok((-k, g));
            }
            return Ok((k, &w * &g));
        }
        g = &w * &g;
        cur = gamma_act(&wk, &Vertex::new(k, &frac))?;
    }
    Err(TreeError::ReductionDiverged(REDUCTION_STEPS))
}

/// Result of moving an edge onto the GL2(A)-quotient ray.
#[derive(Clone, Debug)]
pub struct RayEdge {
    /// Index n of the ray edge `ε_n`.
    pub level: i64,
    /// +1 if the edge maps to `ε_n`, -1 if to its reversal.
    pub sign: i32,
    /// `g` in GL2(A) carrying the edge onto `±ε_n`.
    pub gamma: MatA,
}

/// Moves an oriented edge onto `±ε_n` by an element of GL2(A).
pub fn gl2a_reduce_edge(e: &Edge) -> Result<RayEdge, TreeError> {
    let a = e.origin();
    let b = e.terminus();
    let f = a.field();
    let (n, g) = gl2a_reduce(&a)?;
    let b2 = gamma_act(&g.to_k(), &b)?;
    if b2 == Vertex::ray(f, n + 1) {
        return Ok(RayEdge { level: n, sign: 1, gamma: g });
    }
    // b2 = v(1-n, c π^{-n}); clear c with (1 -cT^n; 0 1), which fixes v_n
    debug_assert_eq!(b2.k, 1 - n);
    let c = b2.u.coeff(-n)?;
    let s = MatA::upper(PolyA::monomial(f, f.neg(c), n as usize));
    let mut tot = &s * &g;
    if n == 0 {
        tot = &MatA::swap(f) * &tot;
        debug_assert_eq!(gamma_act(&tot.to_k(), &b)?, Vertex::ray(f, 1));
        Ok(RayEdge { level: 0, sign: 1, gamma: tot })
    } else {
        debug_assert_eq!(gamma_act(&tot.to_k(), &b)?, Vertex::ray(f, n - 1));
        Ok(RayEdge { level: n - 1, sign: -1, gamma: tot })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fq_algebra::parse_poly;

    fn f2() -> &'static Fq {
        Fq::new(2).unwrap()
    }

    fn pm(f: &'static Fq, a: &str, b: &str, c: &str, d: &str) -> MatA {
        let p = |s| parse_poly(f, s).unwrap();
        MatA::new(p(a), p(b), p(c), p(d))
    }

    #[test]
    fn neighbours_of_origin() {
        let f = f2();
        let v = Vertex::origin(f);
        let nb = v.neighbors();
        assert_eq!(nb.len(), 3);
        assert_eq!(nb[0], Vertex::ray(f, 1));
        assert!(nb[1..].iter().all(|w| w.k() == 1));
        assert_ne!(nb[1], nb[2]);
        assert!(nb.iter().all(|w| w.adjacent(&v)));
        let e = Edge::new(v.clone(), true);
        assert_eq!(e.terminus(), Vertex::new(-1, &LaurentK::zero(f)));
    }

    #[test]
    fn swap_fixes_origin_and_identity_acts_trivially() {
        let f = Fq::new(3).unwrap();
        let o = Vertex::origin(f);
        assert_eq!(gamma_act(&MatA::swap(f).to_k(), &o).unwrap(), o);
        let v = Vertex::new(3, &fq_algebra::embed_k(&PolyA::one(f), &parse_poly(f, "T+2").unwrap(), 3).unwrap());
        assert_eq!(gamma_act(&MatA::identity(f).to_k(), &v).unwrap(), v);
    }

    #[test]
    fn diagonal_matrix_shifts_level() {
        let f = f2();
        let g = pm(f, "T^2+T+1", "0", "0", "1");
        // diag(P,1) v(k,0) = v(k - deg P, 0)
        let w = gamma_act(&g.to_k(), &Vertex::ray(f, 1)).unwrap();
        assert_eq!(w, Vertex::ray(f, 3));
    }

    #[test]
    fn reduction_lands_on_ray() {
        let f = f2();
        let u = fq_algebra::embed_k(&parse_poly(f, "T+1").unwrap(), &parse_poly(f, "T^3+T+1").unwrap(), 5).unwrap();
        let v = Vertex::new(5, &u);
        let (n, g) = gl2a_reduce(&v).unwrap();
        assert_eq!(gamma_act(&g.to_k(), &v).unwrap(), Vertex::ray(f, n));
        assert!(g.det().degree() == Some(0));
    }

    #[test]
    fn edge_reduction_is_consistent() {
        let f = f2();
        let v = Vertex::new(2, &LaurentK::monomial(f, Fe::ONE, 1));
        for w in v.neighbors() {
            let e = Edge::between(&v, &w).unwrap();
            let r = gl2a_reduce_edge(&e).unwrap();
            let img = e.act(&r.gamma.to_k()).unwrap();
            let target = Edge::ray(f, r.level);
            assert_eq!(img, if r.sign == 1 { target } else { target.reversed() });
        }
    }
}
