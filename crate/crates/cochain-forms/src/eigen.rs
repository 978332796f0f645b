//! Newforms and their pullbacks.
//!
//! The new subspace at level I is the Petersson complement of the span of
//! `f(e)` and `f(diag(P,1) e)` over cusp forms f of level I/P, P | I. It is cut
//! into Hecke-irreducible blocks by factoring characteristic polynomials of
//! T_P (U_P for P | I), taking primes in order of increasing degree and
//! recursing on any block that a single operator does not separate.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use fq_algebra::{arith, Num, NumPoly, NumberField, PolyA};

use crate::error::FormsError;
use crate::linalg::Matrix;
use crate::space::{Cochain, CuspSpace};
use crate::zfactor::factor_monic;

/// An eigenvector together with the field its entries live in.
type FieldedCochain = (Cochain, Option<Arc<NumberField>>);

/// A Hecke newform of its own level, normalized by c(f, 1) = 1.
#[derive(Debug)]
pub struct Newform {
    space: Arc<CuspSpace>,
    cochain: Cochain,
    field: Option<Arc<NumberField>>,
    index: usize,
    eigenvalues: Mutex<BTreeMap<PolyA, Num>>,
}

impl Newform {
    /// The level at which the form is new.
    pub fn level(&self) -> &PolyA {
        self.space.level()
    }
    /// The cusp space of that level.
    pub fn space(&self) -> &Arc<CuspSpace> {
        &self.space
    }
    /// Values on the finite edges of its own level.
    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }
    /// The coefficient field, `None` for Q.
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }
    /// Position among the newforms of its level.
    pub fn index(&self) -> usize {
        self.index
    }
    /// A short label such as `T^3 + T + 1#0`.
    pub fn label(&self) -> String {
        format!("{}#{}", self.level(), self.index)
    }

    /// Eigenvalue of T_P (U_P when P divides the level), verified exactly.
    pub fn eigenvalue(&self, p: &PolyA) -> Result<Num, FormsError> {
        if let Some(v) = self.eigenvalues.lock().expect("eigenvalue cache").get(p) {
            return Ok(v.clone());
        }
        let img = self.space.hecke(p, &self.cochain)?;
        let lambda = eigenvalue_of(&self.cochain, &img).ok_or_else(|| FormsError::NotAnEigenform(p.to_string()))?;
        self.eigenvalues.lock().expect("eigenvalue cache").insert(p.clone(), lambda.clone());
        Ok(lambda)
    }
}

/// A newform of level dividing I, viewed at level I through `e ↦ e`.
#[derive(Debug, Clone)]
pub struct Eigenform {
    newform: Arc<Newform>,
    cochain: Cochain,
}

impl Eigenform {
    /// The underlying newform.
    pub fn newform(&self) -> &Arc<Newform> {
        &self.newform
    }
    /// The ambient level.
    pub fn level(&self) -> &PolyA {
        self.cochain.level()
    }
    /// The level at which the form is new.
    pub fn new_level(&self) -> &PolyA {
        self.newform.level()
    }
    /// Values on the finite edges of the ambient level.
    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }
    /// Coefficient field.
    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.newform.field()
    }
    /// Label of the underlying newform.
    pub fn label(&self) -> String {
        self.newform.label()
    }
    /// Hecke eigenvalue at P computed at the new level.
    pub fn eigenvalue(&self, p: &PolyA) -> Result<Num, FormsError> {
        self.newform.eigenvalue(p)
    }
}

/// λ with `img = λ f`, or `None`.
fn eigenvalue_of(f: &Cochain, img: &Cochain) -> Option<Num> {
    let j = f.values().iter().position(|x| !x.is_zero())?;
    let lambda = &img.values()[j] / &f.values()[j];
    let ok = f.values().iter().zip(img.values()).all(|(a, b)| (&lambda * a) == *b);
    ok.then_some(lambda)
}

/// Caches cusp spaces and newforms by level.
#[derive(Debug, Default)]
pub struct FormsContext {
    spaces: Mutex<HashMap<PolyA, Arc<CuspSpace>>>,
    newforms: Mutex<HashMap<PolyA, Arc<Vec<Arc<Newform>>>>>,
}

impl FormsContext {
    /// An empty context.
    pub fn new() -> Self {
        Self::default()
    }

    /// The cusp space of level I (built once).
    pub fn space(&self, level: &PolyA) -> Result<Arc<CuspSpace>, FormsError> {
        if let Some(s) = self.spaces.lock().expect("space cache").get(level) {
            return Ok(s.clone());
        }
        let s = Arc::new(CuspSpace::for_level(level)?);
        Ok(self.spaces.lock().expect("space cache").entry(level.clone()).or_insert(s).clone())
    }

    /// Columns spanning the old subspace at level I.
    pub fn old_subspace(&self, level: &PolyA) -> Result<Matrix, FormsError> {
        let space = self.space(level)?;
        let mut cols = Vec::new();
        for p in arith::squarefree_primes(level)? {
            let lower = self.space(&level.quo(&p))?;
            for f in lower.basis_cochains() {
                cols.push(space.pullback(&lower, &f)?.values().to_vec());
                cols.push(space.degeneracy(&lower, &f, &p)?.values().to_vec());
            }
        }
        let m = Matrix::from_cols(space.edge_count(), &cols);
        // keep an independent spanning set
        let pivots = m.rref().1;
        let cols: Vec<Vec<Num>> = pivots.iter().map(|&j| m.col(j)).collect();
        Ok(Matrix::from_cols(space.edge_count(), &cols))
    }

    /// Columns spanning the Petersson complement of the old subspace.
    pub fn new_subspace(&self, level: &PolyA) -> Result<Matrix, FormsError> {
        let space = self.space(level)?;
        let old = self.old_subspace(level)?;
        let basis = space.basis();
        if old.cols() == 0 {
            return Ok(basis.clone());
        }
        let mut weighted = basis.clone();
        for i in 0..weighted.rows() {
            let w = Num::rational(space.measure().mu_plus(i));
            for j in 0..weighted.cols() {
                let v = weighted.get(i, j) * &w;
                weighted.set(i, j, v);
            }
        }
        let pairing = old.transpose().mul(&weighted);
        let kernel = pairing.nullspace();
        Ok(basis.mul(&Matrix::from_cols(basis.cols(), &kernel)))
    }

    /// Newforms of exact level I, normalized and sorted.
    pub fn newforms(&self, level: &PolyA) -> Result<Arc<Vec<Arc<Newform>>>, FormsError> {
        if let Some(v) = self.newforms.lock().expect("newform cache").get(level) {
            return Ok(v.clone());
        }
        let space = self.space(level)?;
        let new = self.new_subspace(level)?;
        let blocks = split(&space, new)?;
        let mut forms = Vec::new();
        for b in blocks {
            for (cochain, field) in block_eigenvectors(&space, &b)? {
                let c1 = crate::fourier::first_coefficient(&space, &cochain)?;
                let inv = c1.inv().ok_or(FormsError::ZeroLeadingCoefficient)?;
                forms.push((cochain.scale(&inv), field));
            }
        }
        let sort_primes = arith::primes_up_to(level.field(), 2);
        let mut keyed: Vec<(Vec<f64>, usize, FieldedCochain)> = Vec::new();
        for (c, field) in forms {
            let mut key = Vec::new();
            for p in &sort_primes {
                let img = space.hecke(p, &c)?;
                let l = eigenvalue_of(&c, &img).ok_or_else(|| FormsError::NotAnEigenform(p.to_string()))?;
                key.push(l.to_f64());
            }
            keyed.push((key, field.as_ref().map_or(1, |f| f.degree()), (c, field)));
        }
        keyed.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal)));
        let out: Vec<Arc<Newform>> = keyed
            .into_iter()
            .enumerate()
            .map(|(index, (_, _, (cochain, field)))| {
                Arc::new(Newform {
                    space: space.clone(),
                    cochain,
                    field,
                    index,
                    eigenvalues: Mutex::new(BTreeMap::new()),
                })
            })
            .collect();
        let out = Arc::new(out);
        self.newforms.lock().expect("newform cache").insert(level.clone(), out.clone());
        Ok(out)
    }

    /// Every newform of level dividing I, pulled back to level I; ordered by new level.
    pub fn eigenforms(&self, level: &PolyA) -> Result<Vec<Eigenform>, FormsError> {
        let mut out = Vec::new();
        let mut divisors = arith::monic_divisors(level)?;
        divisors.sort();
        for d in divisors {
            out.extend(self.pullbacks(level, &d)?);
        }
        Ok(out)
    }

    /// The newforms of level `new_level` pulled back to level I; `new_level` must divide I.
    pub fn pullbacks(&self, level: &PolyA, new_level: &PolyA) -> Result<Vec<Eigenform>, FormsError> {
        if !level.divisible_by(new_level) {
            return Err(FormsError::NotADivisor(new_level.to_string(), level.to_string()));
        }
        let space = self.space(level)?;
        let lower = self.space(new_level)?;
        self.newforms(new_level)?
            .iter()
            .map(|nf| {
                let cochain = if new_level == level { nf.cochain().clone() } else { space.pullback(&lower, nf.cochain())? };
                Ok(Eigenform { newform: nf.clone(), cochain })
            })
            .collect()
    }
}

/// A Hecke-irreducible block: its span and the restriction of one operator with irreducible charpoly.
struct Block {
    basis: Matrix,
    op: Matrix,
    factor: NumPoly,
}

fn split(space: &CuspSpace, start: Matrix) -> Result<Vec<Block>, FormsError> {
    let level = space.level();
    let max_degree = level.degree().unwrap_or(0) + 2;
    let primes = arith::primes_up_to(level.field(), max_degree.max(1));
    let mut done = Vec::new();
    let mut pending = vec![(start, 0usize)];
    let mut stuck = Vec::new();
    while let Some((b, i)) = pending.pop() {
        if b.cols() == 0 {
            continue;
        }
        let Some(p) = primes.get(i) else {
            stuck.push(b.cols());
            continue;
        };
        let x = space.hecke_on(p, &b)?;
        let chi = x.charpoly();
        let factors = factor_monic(&chi)?;
        // a single operator already separates this block if every factor is simple
        for (g, _) in factors.iter().rev() {
            let kernel = x.eval_poly(g).nullspace();
            let k = Matrix::from_cols(b.cols(), &kernel);
            let sub = b.mul(&k);
            if kernel.len() == g.degree().unwrap_or(0) {
                let op = k.solve(&x.mul(&k)).expect("kernel of g(X) is X-stable");
                done.push(Block { basis: sub, op, factor: g.clone() });
            } else {
                pending.push((sub, i + 1));
            }
        }
    }
    if !stuck.is_empty() {
        return Err(FormsError::Inseparable { level: level.to_string(), max_degree, dims: stuck });
    }
    Ok(done)
}

/// Eigenvectors of a block, one per embedding class: conjugate pairs for quadratic
/// factors, a single generic form over Q[x]/(g) otherwise.
fn block_eigenvectors(space: &CuspSpace, b: &Block) -> Result<Vec<FieldedCochain>, FormsError> {
    let d = b.factor.degree().unwrap_or(0);
    let roots: Vec<(Num, Option<Arc<NumberField>>)> = match d {
        1 => vec![(-&b.factor.coeff(0), None)],
        2 => {
            let c0 = b.factor.coeff(0).to_rational().expect("integral factor");
            let c1 = b.factor.coeff(1).to_rational().expect("integral factor");
            let (field, root) = NumberField::quadratic_with_root(&c1, &c0);
            let conj = root.quadratic_conjugate();
            vec![(root, Some(field.clone())), (conj, Some(field))]
        }
        _ => {
            let modulus = b
                .factor
                .coeffs()
                .iter()
                .map(|c| c.to_rational().expect("integral factor"))
                .collect();
            let field = NumberField::new(modulus);
            vec![(Num::generator(&field), Some(field))]
        }
    };
    let mut out = Vec::new();
    for (root, field) in roots {
        let shifted = b.op.sub(&Matrix::identity(d).scale(&root));
        let kernel = shifted.nullspace();
        if kernel.len() != 1 {
            return Err(FormsError::NotAnEigenform(b.factor.to_string()));
        }
        let values = b.basis.mul_vec(&kernel[0]);
        out.push((Cochain::new(space.level().clone(), values), field));
    }
    Ok(out)
}
