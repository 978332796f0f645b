//! The quotient graph Γ₀(I)\𝒯 for square-free I.
//!
//! Γ₀(I)\GL2(A) is identified with P¹(A/I) through the bottom row, so the
//! Γ₀(I)-orbits of vertices lying over the ray vertex `v_n` correspond to
//! orbits of Stab(v_n) ⊂ GL2(A) acting on P¹(A/I) from the right. The same
//! holds for edges over `ε_n` with Stab(ε_n). Every classification returns a
//! witness in Γ₀(I), so callers can check the answer with [`gamma_act`].

use std::collections::HashMap;

use fq_algebra::{arith, Fq, PolyA};

use crate::error::TreeError;
use crate::matrix::MatA;
use crate::p1::{P1Point, P1Space};
use crate::tree::{gamma_act, gl2a_reduce, gl2a_reduce_edge, Edge, Vertex};

/// Which stabilizer acts on P¹(A/I).
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum StabKind {
    /// GL2(F_q), the stabilizer of `v_0`.
    Gl2Fq,
    /// Upper-triangular matrices over F_q, the stabilizer of `ε_0`.
    Borel,
    /// `{(a b; 0 d) : deg b <= n}`, the stabilizer of `v_n` and of `ε_n` for n >= 1.
    Level(u32),
}

impl StabKind {
    fn order(self, q: u64) -> u64 {
        match self {
            StabKind::Gl2Fq => (q * q - 1) * (q * q - q),
            StabKind::Borel => (q - 1) * (q - 1) * q,
            StabKind::Level(n) => (q - 1) * (q - 1) * q.pow(n + 1),
        }
    }

    fn generators(self, f: &'static Fq) -> Vec<MatA> {
        let g = PolyA::constant(f, f.primitive());
        let one = PolyA::one(f);
        let mut gens = vec![MatA::diag(g.clone(), one.clone()), MatA::diag(one.clone(), g)];
        match self {
            StabKind::Gl2Fq => {
                gens.push(MatA::upper(one));
                gens.push(MatA::swap(f));
            }
            StabKind::Borel => gens.push(MatA::upper(one)),
            StabKind::Level(n) => {
                for j in 0..=n as usize {
                    gens.push(MatA::upper(PolyA::t(f).pow(j as u32)));
                }
            }
        }
        gens
    }
}

/// Orbits of one stabilizer on P¹(A/I).
#[derive(Clone, Debug)]
struct Orbits {
    orbit_of: Vec<u32>,
    /// `elt[x]` satisfies `rep(orbit_of[x]) · elt[x] = x`.
    elt: Vec<MatA>,
    reps: Vec<P1Point>,
    sizes: Vec<u64>,
    group_order: u64,
}

impl Orbits {
    fn compute(space: &P1Space, kind: StabKind) -> Self {
        let f = space.level().field();
        let gens = kind.generators(f);
        let n = space.len();
        let mut orbit_of = vec![u32::MAX; n];
        let mut elt: Vec<Option<MatA>> = vec![None; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for x in space.points() {
            if orbit_of[x.0 as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            orbit_of[x.0 as usize] = id;
            elt[x.0 as usize] = Some(MatA::identity(f));
            let mut stack = vec![x];
            let mut size = 1;
            while let Some(y) = stack.pop() {
                for g in &gens {
                    let z = space.act(y, g);
                    if orbit_of[z.0 as usize] == u32::MAX {
                        orbit_of[z.0 as usize] = id;
                        let e = elt[y.0 as usize].as_ref().expect("visited");
                        elt[z.0 as usize] = Some(e * g);
                        size += 1;
                        stack.push(z);
                    }
                }
            }
            sizes.push(size);
        }
        Orbits {
            orbit_of,
            elt: elt.into_iter().map(|e| e.expect("every point is reached")).collect(),
            reps,
            sizes,
            group_order: kind.order(u64::from(f.q())),
        }
    }

    fn count(&self) -> usize {
        self.reps.len()
    }

    fn stabilizer(&self, i: usize) -> u64 {
        self.group_order / self.sizes[i]
    }
}

/// Identifies a Γ₀(I)-orbit: the ray level over which it lies and the orbit index there.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct OrbitId {
    pub level: i64,
    pub index: usize,
}

/// Classification of a tree vertex.
#[derive(Clone, Debug)]
pub struct VertexClass {
    pub id: OrbitId,
    /// `witness ∈ Γ₀(I)` maps the vertex to the orbit's lift.
    pub witness: MatA,
}

/// Classification of an oriented tree edge.
#[derive(Clone, Debug)]
pub struct EdgeClass {
    pub id: OrbitId,
    /// +1 if the edge is equivalent to the orbit's lift, -1 if to its reversal.
    pub sign: i32,
    /// `witness ∈ Γ₀(I)` maps the edge to the signed lift.
    pub witness: MatA,
}

/// A vertex orbit of the quotient graph.
#[derive(Clone, Debug)]
pub struct VertexRecord {
    pub id: OrbitId,
    pub representative: Vertex,
    pub stabilizer_order: u64,
    pub is_finite_part: bool,
}

/// An edge orbit, oriented by increasing ray level.
#[derive(Clone, Debug)]
pub struct EdgeRecord {
    pub id: OrbitId,
    pub representative: Edge,
    pub stabilizer_order: u64,
    /// Vertex ids (indices into [`QuotientGraph::vertices`]) of origin and terminus.
    pub endpoints: (usize, usize),
}

/// An end of the quotient graph.
#[derive(Clone, Debug)]
pub struct EndRecord {
    /// The monic divisor d of I naming the cusp P_d.
    pub cusp: PolyA,
    /// Vertex ids along the end, starting at the level where the ends separate.
    pub ray: Vec<usize>,
}

/// Γ₀(I)\𝒯 with its finite part and cusp-labelled ends.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    field: &'static Fq,
    level: PolyA,
    p1: P1Space,
    vertex_orbits: Vec<Orbits>,
    edge0_orbits: Orbits,
    lifts: HashMap<P1Point, MatA>,
    depth: usize,
    l0: usize,
    vertices: Vec<VertexRecord>,
    vertex_offset: Vec<usize>,
    edges: Vec<EdgeRecord>,
    edge_offset: Vec<usize>,
    ends: Vec<EndRecord>,
}

const DEPTH_CAP: usize = 256;

impl QuotientGraph {
    /// Builds the quotient with the default depth `2 deg I + 4`.
    pub fn build(level: &PolyA) -> Result<Self, TreeError> {
        let d = level.degree().unwrap_or(0);
        Self::build_with_depth(level, 2 * d + 4)
    }

    /// Builds the quotient, doubling `depth` until the end pattern is stable.
    pub fn build_with_depth(level: &PolyA, depth: usize) -> Result<Self, TreeError> {
        if !level.is_monic() || !arith::is_squarefree(level) {
            return Err(TreeError::BadLevel(level.to_string()));
        }
        let f = level.field();
        let p1 = P1Space::new(level)?;
        let n_ends = 1usize << p1.primes().len();
        let edge0_orbits = Orbits::compute(&p1, StabKind::Borel);
        let mut vertex_orbits: Vec<Orbits> = Vec::new();
        let mut depth = depth.max(2);
        let l0 = loop {
            while vertex_orbits.len() <= depth {
                let n = vertex_orbits.len() as u32;
                let kind = if n == 0 { StabKind::Gl2Fq } else { StabKind::Level(n) };
                vertex_orbits.push(Orbits::compute(&p1, kind));
            }
            let edge_count = |m: usize| if m == 0 { edge0_orbits.count() } else { vertex_orbits[m].count() };
            let stable_from = |n: usize| {
                (n..=depth).all(|m| vertex_orbits[m].count() == n_ends && edge_count(m) == n_ends && edge_count(m - 1) == n_ends)
            };
            // a stable tail of at least two levels guards against coincidences
            match (1..depth.saturating_sub(1)).find(|&n| stable_from(n)) {
                Some(n) => break n,
                None if depth >= DEPTH_CAP => return Err(TreeError::EndsUnstable(depth)),
                None => depth *= 2,
            }
        };

        let mut lifts = HashMap::new();
        for orbits in vertex_orbits.iter().chain(std::iter::once(&edge0_orbits)) {
            for &x in &orbits.reps {
                if let std::collections::hash_map::Entry::Vacant(e) = lifts.entry(x) {
                    e.insert(p1.lift_matrix(x)?);
                }
            }
        }

        let mut g = QuotientGraph {
            field: f,
            level: level.clone(),
            p1,
            vertex_orbits,
            edge0_orbits,
            lifts,
            depth,
            l0,
            vertices: Vec::new(),
            vertex_offset: Vec::new(),
            edges: Vec::new(),
            edge_offset: Vec::new(),
            ends: Vec::new(),
        };
        g.assemble()?;
        Ok(g)
    }

    fn assemble(&mut self) -> Result<(), TreeError> {
        let f = self.field;
        for n in 0..=self.depth {
            self.vertex_offset.push(self.vertices.len());
            let orbits = &self.vertex_orbits[n];
            for i in 0..orbits.count() {
                let lift = &self.lifts[&orbits.reps[i]];
                let rep = gamma_act(&lift.to_k(), &Vertex::ray(f, n as i64))?;
                self.vertices.push(VertexRecord {
                    id: OrbitId { level: n as i64, index: i },
                    representative: rep,
                    stabilizer_order: orbits.stabilizer(i),
                    is_finite_part: n <= self.l0,
                });
            }
        }
        for n in 0..self.depth {
            self.edge_offset.push(self.edges.len());
            let count = self.edge_orbits(n).count();
            for i in 0..count {
                let orbits = self.edge_orbits(n);
                let x = orbits.reps[i];
                let stab = orbits.stabilizer(i);
                let lift = self.lifts[&x].to_k();
                let rep = Edge::ray(f, n as i64).act(&lift)?;
                let o = self.vertex_offset[n] + self.vertex_orbits[n].orbit_of[x.0 as usize] as usize;
                let t = self.vertex_offset[n + 1] + self.vertex_orbits[n + 1].orbit_of[x.0 as usize] as usize;
                self.edges.push(EdgeRecord {
                    id: OrbitId { level: n as i64, index: i },
                    representative: rep,
                    stabilizer_order: stab,
                    endpoints: (o, t),
                });
            }
        }
        let start = &self.vertex_orbits[self.l0];
        for i in 0..start.count() {
            let x = start.reps[i];
            let ray = (self.l0..=self.depth)
                .map(|m| self.vertex_offset[m] + self.vertex_orbits[m].orbit_of[x.0 as usize] as usize)
                .collect();
            self.ends.push(EndRecord { cusp: self.p1.zero_support(x), ray });
        }
        self.ends.sort_by(|a, b| a.cusp.cmp(&b.cusp));
        Ok(())
    }

    fn edge_orbits(&self, n: usize) -> &Orbits {
        if n == 0 {
            &self.edge0_orbits
        } else {
            &self.vertex_orbits[n.min(self.depth)]
        }
    }

    fn vertex_level(&self, n: usize) -> &Orbits {
        &self.vertex_orbits[n.min(self.depth)]
    }

    /// The level I.
    pub fn level(&self) -> &PolyA {
        &self.level
    }
    /// The field of constants.
    pub fn field(&self) -> &'static Fq {
        self.field
    }
    /// P¹(A/I).
    pub fn p1(&self) -> &P1Space {
        &self.p1
    }
    /// Deepest ray level stored explicitly.
    pub fn depth(&self) -> usize {
        self.depth
    }
    /// First ray level from which the quotient consists of the separated ends only.
    pub fn cusp_level(&self) -> usize {
        self.l0
    }
    /// All stored vertex orbits, grouped by level.
    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }
    /// All stored edge orbits, grouped by level.
    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }
    /// The ends, sorted by cusp label.
    pub fn ends(&self) -> &[EndRecord] {
        &self.ends
    }
    /// Vertex orbits of the finite part (levels up to the cusp level).
    pub fn finite_vertices(&self) -> &[VertexRecord] {
        &self.vertices[..self.vertex_offset[self.l0 + 1]]
    }
    /// Edge orbits of the finite part (levels below the cusp level).
    pub fn finite_edges(&self) -> &[EdgeRecord] {
        &self.edges[..self.edge_offset[self.l0]]
    }
    /// Position of a stored vertex orbit in [`Self::vertices`].
    pub fn vertex_index(&self, id: OrbitId) -> Option<usize> {
        let n = usize::try_from(id.level).ok()?;
        (n <= self.depth).then(|| self.vertex_offset[n] + id.index)
    }
    /// Position of a finite edge orbit in [`Self::finite_edges`].
    pub fn finite_edge_index(&self, id: OrbitId) -> Option<usize> {
        let n = usize::try_from(id.level).ok()?;
        (n < self.l0).then(|| self.edge_offset[n] + id.index)
    }

    /// First Betti number of the finite part: edges - vertices + components.
    pub fn betti(&self) -> usize {
        let nv = self.finite_vertices().len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = nv;
        for e in self.finite_edges() {
            let (a, b) = (find(&mut parent, e.endpoints.0), find(&mut parent, e.endpoints.1));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        self.finite_edges().len() + components - nv
    }

    /// Sum over incident quotient edges of [Stab(v) : Stab(e)]; equals q+1.
    pub fn weighted_degree(&self, vertex: usize) -> u64 {
        let sv = self.vertices[vertex].stabilizer_order;
        self.edges
            .iter()
            .filter(|e| e.endpoints.0 == vertex || e.endpoints.1 == vertex)
            .map(|e| {
                let mult = u64::from(e.endpoints.0 == vertex) + u64::from(e.endpoints.1 == vertex);
                mult * sv / e.stabilizer_order
            })
            .sum()
    }

    /// The lift `δ` with `δ v_n` representing orbit `id` (the same for edges over `ε_n`).
    pub fn lift_matrix(&self, id: OrbitId, is_edge: bool) -> &MatA {
        let n = id.level as usize;
        let orbits = if is_edge { self.edge_orbits(n) } else { self.vertex_level(n) };
        &self.lifts[&orbits.reps[id.index]]
    }

    /// The representative tree vertex of an orbit (any level).
    pub fn vertex_lift(&self, id: OrbitId) -> Vertex {
        let d = self.lift_matrix(id, false);
        gamma_act(&d.to_k(), &Vertex::ray(self.field, id.level)).expect("invertible lift")
    }

    /// The representative tree edge of an orbit (any level), oriented by increasing level.
    pub fn edge_lift(&self, id: OrbitId) -> Edge {
        let d = self.lift_matrix(id, true);
        Edge::ray(self.field, id.level).act(&d.to_k()).expect("invertible lift")
    }

    /// The point `[0:1] g^{-1}` for `g` in GL2(A).
    fn point_of(&self, g: &MatA) -> P1Point {
        self.p1.point(&-&g.c, &g.a)
    }

    /// Classifies a vertex up to Γ₀(I).
    pub fn reduce_vertex(&self, v: &Vertex) -> Result<VertexClass, TreeError> {
        let (n, g) = gl2a_reduce(v)?;
        let orbits = self.vertex_level(n as usize);
        let x = self.point_of(&g);
        let index = orbits.orbit_of[x.0 as usize] as usize;
        let delta = &self.lifts[&orbits.reps[index]];
        let witness = &(delta * &orbits.elt[x.0 as usize]) * &g;
        debug_assert!(witness.in_gamma0(&self.level));
        Ok(VertexClass { id: OrbitId { level: n, index }, witness })
    }

    /// Classifies an oriented edge up to Γ₀(I).
    pub fn reduce_edge(&self, e: &Edge) -> Result<EdgeClass, TreeError> {
        let r = gl2a_reduce_edge(e)?;
        let orbits = self.edge_orbits(r.level as usize);
        let x = self.point_of(&r.gamma);
        let index = orbits.orbit_of[x.0 as usize] as usize;
        let delta = &self.lifts[&orbits.reps[index]];
        let witness = &(delta * &orbits.elt[x.0 as usize]) * &r.gamma;
        debug_assert!(witness.in_gamma0(&self.level));
        Ok(EdgeClass { id: OrbitId { level: r.level, index }, sign: r.sign, witness })
    }

    /// Stabilizer order of any vertex orbit (levels beyond the stored depth included).
    pub fn vertex_stabilizer(&self, id: OrbitId) -> u64 {
        let n = id.level as usize;
        let kind = if n == 0 { StabKind::Gl2Fq } else { StabKind::Level(n as u32) };
        kind.order(u64::from(self.field.q())) / self.vertex_level(n).sizes[id.index]
    }

    /// The cusp label of the end containing a vertex orbit at or beyond the cusp level.
    pub fn cusp_of(&self, id: OrbitId) -> Option<PolyA> {
        let n = usize::try_from(id.level).ok()?;
        (n >= self.l0).then(|| self.p1.zero_support(self.vertex_level(n).reps[id.index]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fq_algebra::parse_poly;

    #[test]
    fn level_one_is_a_ray() {
        let f = Fq::new(2).unwrap();
        let g = QuotientGraph::build(&PolyA::one(f)).unwrap();
        assert_eq!(g.betti(), 0);
        assert_eq!(g.ends().len(), 1);
        assert_eq!(g.cusp_level(), 1);
        assert_eq!(g.vertices()[0].stabilizer_order, 6);
    }

    #[test]
    fn weighted_degrees() {
        let f = Fq::new(2).unwrap();
        let g = QuotientGraph::build(&parse_poly(f, "T^3+T+1").unwrap()).unwrap();
        for v in 0..g.vertex_offset[g.depth] {
            assert_eq!(g.weighted_degree(v), 3, "vertex {v}");
        }
    }
}
