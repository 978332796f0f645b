//! One-cycles on the special fibre of the blown-up model and the cycle Z_{f,g}.

use std::collections::BTreeMap;

use serde::Serialize;

use bruhat_tits::QuotientGraph;
use cochain_forms::Cochain;
use cusp_units::Curve;
use fq_algebra::Num;

use crate::local::{local_pairing, z_site, LocalCycle};

/// A blown-up point, named by two finite quotient edges in their stored orientation.
///
/// Reversing both edges gives the same point; reversing one of them swaps the
/// roles of the four surfaces and negates the local cycle Z.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Site {
    /// Edge index on the first factor.
    pub first: usize,
    /// Edge index on the second factor.
    pub second: usize,
}

/// Components that never pass through a blown-up point.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GlobalSymbol {
    /// The component over finite vertex `vertex` of a fibre curve P_d × X₀(I) or X₀(I) × P_d;
    /// cusps reduce to smooth points, so these curves meet no site.
    Fibre { curve: Curve, vertex: usize },
}

/// A finitely supported combination of local pieces at sites and global components.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OneCycle {
    sites: BTreeMap<Site, LocalCycle>,
    global: BTreeMap<GlobalSymbol, Num>,
}

impl OneCycle {
    /// The zero cycle.
    pub fn zero() -> Self {
        Self::default()
    }
    /// Adds `k · c` at a site.
    pub fn add_local(&mut self, site: Site, k: &Num, c: &LocalCycle) {
        let entry = self.sites.entry(site).or_default();
        entry.add_scaled(k, c);
        if entry.is_zero() {
            self.sites.remove(&site);
        }
    }
    /// Adds `k · s`.
    pub fn add_global(&mut self, s: GlobalSymbol, k: &Num) {
        let v = self.global.get(&s).map_or_else(|| k.clone(), |x| x + k);
        if v.is_zero() {
            self.global.remove(&s);
        } else {
            self.global.insert(s, v);
        }
    }
    /// The local part at a site.
    pub fn at(&self, site: &Site) -> Option<&LocalCycle> {
        self.sites.get(site)
    }
    /// Sites with a nonzero local part.
    pub fn sites(&self) -> impl Iterator<Item = (&Site, &LocalCycle)> {
        self.sites.iter()
    }
    /// Global components.
    pub fn global(&self) -> impl Iterator<Item = (&GlobalSymbol, &Num)> {
        self.global.iter()
    }
    /// True if the cycle vanishes.
    pub fn is_zero(&self) -> bool {
        self.sites.is_empty() && self.global.is_empty()
    }
}

/// Z_{f,g} = Σ f(e) g(e′) Z_{(e,e′)}, stored on the sites where the coefficient is nonzero.
#[derive(Clone, Debug, Default)]
pub struct SpecialCycle {
    coefficients: BTreeMap<Site, Num>,
}

impl SpecialCycle {
    /// Builds Z_{f,g} from two cochains of one level.
    pub fn new(f: &Cochain, g: &Cochain) -> Self {
        let mut coefficients = BTreeMap::new();
        for (i, a) in f.values().iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in g.values().iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                coefficients.insert(Site { first: i, second: j }, a * b);
            }
        }
        SpecialCycle { coefficients }
    }
    /// The coefficient at a site.
    pub fn coefficient(&self, site: &Site) -> Num {
        self.coefficients.get(site).cloned().unwrap_or_else(Num::zero)
    }
    /// Sites carrying a nonzero coefficient.
    pub fn sites(&self) -> impl Iterator<Item = (&Site, &Num)> {
        self.coefficients.iter()
    }
    /// Z at a site as a local cycle.
    pub fn local(&self, site: &Site) -> LocalCycle {
        let mut c = LocalCycle::zero();
        c.add_scaled(&self.coefficient(site), &z_site());
        c
    }
}

/// Weight of a site: μ⁺(e) μ⁺(e′) / (q - 1), i.e. (q - 1)/(|Stab e| |Stab e′|).
pub fn site_weight(graph: &QuotientGraph, site: &Site) -> Num {
    let edges = graph.finite_edges();
    let q = i64::from(graph.field().q());
    let s1 = edges[site.first].stabilizer_order as i64;
    let s2 = edges[site.second].stabilizer_order as i64;
    Num::ratio(q - 1, s1 * s2)
}

/// (r, Z) = Σ_sites weight · coefficient of Z · (r_site, Z_P). Global components pair to zero.
pub fn pairing(graph: &QuotientGraph, r: &OneCycle, z: &SpecialCycle) -> Num {
    z.sites()
        .filter_map(|(site, k)| r.at(site).map(|c| &(k * &site_weight(graph, site)) * &local_pairing(c)))
        .sum()
}
