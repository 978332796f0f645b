//! Cuspidal harmonic cochains on Γ₀(I)\𝒯 and the Hecke action on them.
//!
//! A cochain is stored by its values on the finite edge orbits of the quotient
//! graph, each orbit oriented by increasing ray level; the value on a tree edge
//! is recovered by classifying the edge and applying the orientation sign.
//! Edges deep in the ends carry the value 0, which is what makes a cochain
//! cuspidal. Harmonicity is imposed at every finite vertex by lifting it to
//! the tree and summing over its q+1 incident edges.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;

use bruhat_tits::{Edge, MatA, QuotientGraph};
use fq_algebra::{arith, Num, PolyA};

use crate::error::FormsError;
use crate::linalg::Matrix;

/// A Γ₀(I)-invariant alternating cochain, given on the finite edge orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    level: PolyA,
    values: Vec<Num>,
}

impl Cochain {
    /// A cochain of the given level from its orbit values.
    pub fn new(level: PolyA, values: Vec<Num>) -> Self {
        Cochain { level, values }
    }
    /// The level I.
    pub fn level(&self) -> &PolyA {
        &self.level
    }
    /// Values on the finite edge orbits, in [`QuotientGraph::finite_edges`] order.
    pub fn values(&self) -> &[Num] {
        &self.values
    }
    /// True for the zero cochain.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Num::is_zero)
    }
    /// Scalar multiple.
    pub fn scale(&self, c: &Num) -> Cochain {
        Cochain::new(self.level.clone(), self.values.iter().map(|v| v * c).collect())
    }
    /// Sum of two cochains of the same level.
    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.level, other.level, "adding cochains of different levels");
        Cochain::new(self.level.clone(), self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }
}

/// Edge measures μ(e) = (q-1)/(2|Stab(e)|) and μ⁺(e) = 2μ(e) on the finite edge orbits.
#[derive(Clone, Debug)]
pub struct MeasureWeights {
    mu: Vec<BigRational>,
}

impl MeasureWeights {
    /// Measures of the finite edges of `g`.
    pub fn new(g: &QuotientGraph) -> Self {
        let q = i64::from(g.field().q());
        let mu = g
            .finite_edges()
            .iter()
            .map(|e| BigRational::new(BigInt::from(q - 1), BigInt::from(2) * BigInt::from(e.stabilizer_order)))
            .collect();
        MeasureWeights { mu }
    }
    /// μ(e) for finite edge `i`.
    pub fn mu(&self, i: usize) -> &BigRational {
        &self.mu[i]
    }
    /// μ⁺(e) = 2μ(e) for finite edge `i`.
    pub fn mu_plus(&self, i: usize) -> BigRational {
        &self.mu[i] * BigRational::from_integer(BigInt::from(2))
    }
    /// Number of weighted edges.
    pub fn len(&self) -> usize {
        self.mu.len()
    }
    /// True if there are no finite edges.
    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

/// The space of cuspidal harmonic cochains of level I.
pub struct CuspSpace {
    graph: Arc<QuotientGraph>,
    measure: MeasureWeights,
    basis: Matrix,
    hecke_cache: Mutex<HashMap<PolyA, Arc<Matrix>>>,
}

impl std::fmt::Debug for CuspSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CuspSpace(level {}, dim {})", self.graph.level(), self.dim())
    }
}

impl CuspSpace {
    /// Builds the quotient graph of `level` and solves the harmonicity equations.
    pub fn for_level(level: &PolyA) -> Result<Self, FormsError> {
        Self::new(Arc::new(QuotientGraph::build(level)?))
    }

    /// Solves the harmonicity equations on an existing quotient graph.
    pub fn new(graph: Arc<QuotientGraph>) -> Result<Self, FormsError> {
        let constraints = harmonic_constraints(&graph)?;
        let basis_vecs = constraints.nullspace();
        let basis = Matrix::from_cols(graph.finite_edges().len(), &basis_vecs);
        let measure = MeasureWeights::new(&graph);
        Ok(CuspSpace { graph, measure, basis, hecke_cache: Mutex::new(HashMap::new()) })
    }

    /// The quotient graph.
    pub fn graph(&self) -> &Arc<QuotientGraph> {
        &self.graph
    }
    /// The level I.
    pub fn level(&self) -> &PolyA {
        self.graph.level()
    }
    /// Dimension of the cusp space.
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
    /// Number of finite edge orbits (the ambient coordinate count).
    pub fn edge_count(&self) -> usize {
        self.basis.rows()
    }
    /// Basis as columns over the finite edges.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    /// Basis vectors as cochains.
    pub fn basis_cochains(&self) -> Vec<Cochain> {
        self.basis.columns().into_iter().map(|v| Cochain::new(self.level().clone(), v)).collect()
    }
    /// The edge measures.
    pub fn measure(&self) -> &MeasureWeights {
        &self.measure
    }

    fn check_level(&self, f: &Cochain) -> Result<(), FormsError> {
        if f.level() != self.level() || f.values().len() != self.edge_count() {
            return Err(FormsError::LevelMismatch { expected: self.level().to_string(), found: f.level().to_string() });
        }
        Ok(())
    }

    /// Value of a cochain on an arbitrary oriented tree edge.
    pub fn value_at(&self, f: &Cochain, e: &Edge) -> Result<Num, FormsError> {
        value_on_edge(&self.graph, f.values(), e)
    }

    /// True if `f` is harmonic at every finite vertex (checked on tree lifts).
    pub fn is_harmonic(&self, f: &Cochain) -> Result<bool, FormsError> {
        self.check_level(f)?;
        let c = harmonic_constraints(&self.graph)?;
        Ok(c.mul_vec(f.values()).iter().all(Num::is_zero))
    }

    /// Coordinates of `f` in the cusp basis; errors if `f` is not a cusp form.
    pub fn coordinates(&self, f: &Cochain) -> Result<Vec<Num>, FormsError> {
        self.check_level(f)?;
        let b = Matrix::from_cols(self.edge_count(), &[f.values().to_vec()]);
        let x = self.basis.solve(&b).ok_or_else(|| FormsError::NotCuspidal(self.level().to_string()))?;
        Ok(x.col(0))
    }

    /// Petersson product ∫ f g dμ over all oriented edges (bilinear; eigenvalue fields are totally real).
    pub fn petersson(&self, f: &Cochain, g: &Cochain) -> Result<Num, FormsError> {
        self.check_level(f)?;
        self.check_level(g)?;
        Ok(f.values()
            .iter()
            .zip(g.values())
            .enumerate()
            .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
            .map(|(i, (a, b))| &(a * b) * &Num::rational(self.measure.mu_plus(i)))
            .sum())
    }

    /// Gram matrix of the Petersson product on the given cochains.
    pub fn gram(&self, fs: &[Cochain]) -> Result<Matrix, FormsError> {
        let mut m = Matrix::zeros(fs.len(), fs.len());
        for i in 0..fs.len() {
            for j in i..fs.len() {
                let v = self.petersson(&fs[i], &fs[j])?;
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        Ok(m)
    }

    /// The matrix H with (T_P f)(e_j) = Σ_k H[j,k] f(e_k) for cusp forms f.
    ///
    /// For P ∤ I this is T_P; for P | I the term `(P 0; 0 1)` is dropped (the operator U_P).
    pub fn hecke_matrix(&self, p: &PolyA) -> Result<Arc<Matrix>, FormsError> {
        if let Some(m) = self.hecke_cache.lock().expect("hecke cache").get(p) {
            return Ok(m.clone());
        }
        if !p.is_monic() || !arith::is_irreducible(p) {
            return Err(FormsError::NotPrime(p.to_string()));
        }
        let mats = hecke_matrices(self.level(), p);
        let n = self.edge_count();
        let mut h = Matrix::zeros(n, n);
        for (j, rec) in self.graph.finite_edges().iter().enumerate() {
            let e = &rec.representative;
            for m in &mats {
                let img = e.act(&m.to_k())?;
                let c = self.graph.reduce_edge(&img)?;
                if let Some(k) = self.graph.finite_edge_index(c.id) {
                    h.add_to(j, k, &Num::int(i64::from(c.sign)));
                }
            }
        }
        let h = Arc::new(h);
        self.hecke_cache.lock().expect("hecke cache").insert(p.clone(), h.clone());
        Ok(h)
    }

    /// T_P f (U_P f when P | I).
    pub fn hecke(&self, p: &PolyA, f: &Cochain) -> Result<Cochain, FormsError> {
        self.check_level(f)?;
        let h = self.hecke_matrix(p)?;
        Ok(Cochain::new(self.level().clone(), h.mul_vec(f.values())))
    }

    /// Matrix of T_P on the cusp basis (columns are images of basis vectors).
    pub fn hecke_on_basis(&self, p: &PolyA) -> Result<Matrix, FormsError> {
        self.hecke_on(p, &self.basis)
    }

    /// Matrix of T_P on a Hecke-stable subspace spanned by the columns of `sub`.
    pub fn hecke_on(&self, p: &PolyA, sub: &Matrix) -> Result<Matrix, FormsError> {
        let h = self.hecke_matrix(p)?;
        let img = h.mul(sub);
        sub.solve(&img).ok_or_else(|| FormsError::NotCuspidal(self.level().to_string()))
    }

    /// Pulls a cusp form of a lower level I' back along e ↦ diag(d,1) e, where d I' | I.
    pub fn degeneracy(&self, lower: &CuspSpace, f: &Cochain, d: &PolyA) -> Result<Cochain, FormsError> {
        lower.check_level(f)?;
        let target = d * lower.level();
        if !self.level().divisible_by(&target) {
            return Err(FormsError::NotADivisor(target.to_string(), self.level().to_string()));
        }
        let m = MatA::diag(d.clone(), PolyA::one(d.field())).to_k();
        let values = self
            .graph
            .finite_edges()
            .iter()
            .map(|rec| {
                let img = rec.representative.act(&m)?;
                lower.value_at(f, &img)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cochain::new(self.level().clone(), values))
    }

    /// Pulls back a lower-level cusp form with d = 1.
    pub fn pullback(&self, lower: &CuspSpace, f: &Cochain) -> Result<Cochain, FormsError> {
        self.degeneracy(lower, f, &PolyA::one(self.level().field()))
    }
}

/// The Hecke coset representatives `(P 0; 0 1)` (only for P ∤ I) and `(1 r; 0 P)`, deg r < deg P.
pub fn hecke_matrices(level: &PolyA, p: &PolyA) -> Vec<MatA> {
    let f = p.field();
    let mut mats = Vec::new();
    if !level.divisible_by(p) {
        mats.push(MatA::diag(p.clone(), PolyA::one(f)));
    }
    for r in arith::polys_deg_lt(f, p.degree().unwrap_or(0)) {
        mats.push(MatA::new(PolyA::one(f), r, PolyA::zero(f), p.clone()));
    }
    mats
}

/// Value of orbit data on an arbitrary oriented tree edge.
pub fn value_on_edge(g: &QuotientGraph, values: &[Num], e: &Edge) -> Result<Num, FormsError> {
    let c = g.reduce_edge(e)?;
    Ok(match g.finite_edge_index(c.id) {
        Some(k) if c.sign == 1 => values[k].clone(),
        Some(k) => -&values[k],
        None => Num::zero(),
    })
}

/// One row per finite vertex: the signed sum over the q+1 tree edges into a lift.
pub fn harmonic_constraints(g: &QuotientGraph) -> Result<Matrix, FormsError> {
    let n = g.finite_edges().len();
    let verts = g.finite_vertices();
    let mut m = Matrix::zeros(verts.len(), n);
    for (i, rec) in verts.iter().enumerate() {
        let v = &rec.representative;
        for w in v.neighbors() {
            let e = Edge::between(&w, v).expect("neighbours are adjacent");
            let c = g.reduce_edge(&e)?;
            if let Some(k) = g.finite_edge_index(c.id) {
                m.add_to(i, k, &Num::int(i64::from(c.sign)));
            }
        }
    }
    Ok(m)
}
