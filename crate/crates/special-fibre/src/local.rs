//! The blow-up of one singular point of the special fibre of X₀(I) × X₀(I).
//!
//! At a site (e, e′) with e from A to B and e′ from C to D the four surfaces
//! meeting at the point are Y1 = A×C, Y2 = A×D, Y3 = B×C and Y4 = B×D.
//! Blowing up the point adds Y5 ≅ P¹×P¹, and Y_{i5} = Y_i ∩ Y5 are lines on it.

use std::collections::BTreeMap;

use serde::Serialize;

use fq_algebra::Num;

/// Curves in the local basis at a blown-up site.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LocalSymbol {
    Y12,
    Y13,
    Y24,
    Y34,
    Y15,
    Y25,
    Y35,
    Y45,
    /// Strict transform of the diagonal inside Y1 = A×A.
    Diagonal1,
    /// Strict transform of the diagonal inside Y4 = B×B.
    Diagonal4,
}

use LocalSymbol::*;

impl LocalSymbol {
    /// The label of the same curve after reversing the first and/or second edge of the site.
    ///
    /// Reversing the first edge swaps surfaces 1 ↔ 3 and 2 ↔ 4; reversing the second swaps
    /// 1 ↔ 2 and 3 ↔ 4. A diagonal piece only keeps a label when both edges are reversed.
    pub fn reversed(self, first: bool, second: bool) -> Option<LocalSymbol> {
        let swap = |i: u8| {
            let mut i = i - 1;
            if first {
                i ^= 2;
            }
            if second {
                i ^= 1;
            }
            i + 1
        };
        match self {
            Diagonal1 | Diagonal4 if first != second => None,
            Diagonal1 => Some(if first { Diagonal4 } else { Diagonal1 }),
            Diagonal4 => Some(if first { Diagonal1 } else { Diagonal4 }),
            _ => {
                let (i, j) = self.surfaces();
                double_curve(swap(i), if j == 5 { 5 } else { swap(j) })
            }
        }
    }

    /// The pair of surfaces whose intersection this curve is; diagonal pieces report (i, i).
    pub fn surfaces(self) -> (u8, u8) {
        match self {
            Y12 => (1, 2),
            Y13 => (1, 3),
            Y24 => (2, 4),
            Y34 => (3, 4),
            Y15 => (1, 5),
            Y25 => (2, 5),
            Y35 => (3, 5),
            Y45 => (4, 5),
            Diagonal1 => (1, 1),
            Diagonal4 => (4, 4),
        }
    }
}

fn double_curve(i: u8, j: u8) -> Option<LocalSymbol> {
    let (i, j) = (i.min(j), i.max(j));
    LOCAL_BASIS.into_iter().find(|s| s.surfaces() == (i, j) && i != j)
}

/// Every local symbol.
pub const LOCAL_BASIS: [LocalSymbol; 10] = [Y12, Y13, Y24, Y34, Y15, Y25, Y35, Y45, Diagonal1, Diagonal4];

/// The lines Y_{a5} on the exceptional surface, by a.
const EXCEPTIONAL: [(u8, LocalSymbol); 4] = [(1, Y15), (2, Y25), (3, Y35), (4, Y45)];

/// Pairs {i, j} with a triple point Y_{ij5}: the surfaces adjacent across a double curve.
const TRIPLE_POINTS: [(u8, u8); 4] = [(1, 2), (1, 3), (2, 4), (3, 4)];

/// A rational combination of local symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalCycle {
    terms: BTreeMap<LocalSymbol, Num>,
}

impl LocalCycle {
    /// The zero cycle.
    pub fn zero() -> Self {
        Self::default()
    }
    /// Builds a cycle from integer coefficients.
    pub fn from_ints(terms: &[(LocalSymbol, i64)]) -> Self {
        let mut c = Self::zero();
        for &(s, k) in terms {
            c.add_term(s, &Num::int(k));
        }
        c
    }
    /// Adds `k · s`.
    pub fn add_term(&mut self, s: LocalSymbol, k: &Num) {
        let v = self.terms.get(&s).map_or_else(|| k.clone(), |x| x + k);
        if v.is_zero() {
            self.terms.remove(&s);
        } else {
            self.terms.insert(s, v);
        }
    }
    /// Adds `k · other`.
    pub fn add_scaled(&mut self, k: &Num, other: &LocalCycle) {
        for (s, c) in &other.terms {
            self.add_term(*s, &(k * c));
        }
    }
    /// Coefficient of a symbol.
    pub fn coefficient(&self, s: LocalSymbol) -> Num {
        self.terms.get(&s).cloned().unwrap_or_else(Num::zero)
    }
    /// Nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (&LocalSymbol, &Num)> {
        self.terms.iter()
    }
    /// True if empty.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    /// Relabels the cycle after reversing edges of the site; `None` if a diagonal piece has no label.
    pub fn reversed(&self, first: bool, second: bool) -> Option<LocalCycle> {
        let mut c = Self::zero();
        for (s, k) in &self.terms {
            c.add_term(s.reversed(first, second)?, k);
        }
        Some(c)
    }
}

/// Z_P = Y15 + Y45 - Y25 - Y35.
pub fn z_site() -> LocalCycle {
    LocalCycle::from_ints(&Z_TERMS)
}

const Z_TERMS: [(LocalSymbol, i64); 4] = [(Y15, 1), (Y45, 1), (Y25, -1), (Y35, -1)];

/// Total transform of the diagonal component over the origin A of e at the site (e, e).
pub fn diagonal_origin() -> LocalCycle {
    LocalCycle::from_ints(&[(Diagonal1, 1), (Y15, 1)])
}

/// Total transform of the diagonal component over the terminus B of e at the site (e, e).
pub fn diagonal_terminus() -> LocalCycle {
    LocalCycle::from_ints(&[(Diagonal4, 1), (Y45, 1)])
}

/// Total transform of the double curve {e} × X near the site.
pub fn vertical_total() -> LocalCycle {
    LocalCycle::from_ints(&[(Y13, 1), (Y15, 1), (Y35, -1), (Y24, 1), (Y25, 1), (Y45, -1)])
}

/// Total transform of the double curve X × {e′} near the site.
pub fn horizontal_total() -> LocalCycle {
    LocalCycle::from_ints(&[(Y12, 1), (Y15, 1), (Y25, -1), (Y34, 1), (Y35, 1), (Y45, -1)])
}

/// (Z_P, s) for a basis symbol, as tabulated.
pub fn z_pairing(s: LocalSymbol) -> i64 {
    match s {
        Y12 | Y13 | Y24 | Y34 | Diagonal1 | Diagonal4 => 0,
        Y15 | Y45 => -2,
        Y25 | Y35 => 2,
    }
}

/// (c, Z_P) by bilinear extension of [`z_pairing`].
pub fn local_pairing(c: &LocalCycle) -> Num {
    c.terms().map(|(s, k)| k * &Num::int(z_pairing(*s))).sum()
}

/// Intersection numbers recomputed from the geometry of Y5 ≅ P¹×P¹.
///
/// Two lines Y_{a5}, Y_{b5} meet exactly when Y_{ab5} is a triple point; lines that do
/// not meet lie in the same ruling class. Classes h, v satisfy h² = v² = 0, h·v = 1.
/// The double curve Y_{ij} meets Y5 in the point Y_{ij5}, which lies on Y_{i5} and Y_{j5};
/// the strict transforms of the diagonal miss Y5.
#[derive(Clone, Debug)]
pub struct RulingsOracle {
    ruling: BTreeMap<u8, u8>,
}

impl Default for RulingsOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl RulingsOracle {
    /// Assigns rulings by propagating "meeting lines have different classes" from Y15.
    pub fn new() -> Self {
        let meets = |a: u8, b: u8| TRIPLE_POINTS.contains(&(a.min(b), a.max(b)));
        let mut ruling = BTreeMap::from([(1u8, 0u8)]);
        while ruling.len() < 4 {
            for a in 1..=4u8 {
                if let Some(&ca) = ruling.get(&a) {
                    for b in 1..=4u8 {
                        if b != a && !ruling.contains_key(&b) {
                            ruling.insert(b, if meets(a, b) { 1 - ca } else { ca });
                        }
                    }
                }
            }
        }
        RulingsOracle { ruling }
    }

    fn line(s: LocalSymbol) -> Option<u8> {
        EXCEPTIONAL.iter().find(|(_, x)| *x == s).map(|(a, _)| *a)
    }

    fn double_curve(s: LocalSymbol) -> Option<(u8, u8)> {
        match s {
            Y12 => Some((1, 2)),
            Y13 => Some((1, 3)),
            Y24 => Some((2, 4)),
            Y34 => Some((3, 4)),
            _ => None,
        }
    }

    /// (s, t) when at least one of them is a line on Y5.
    pub fn pair(&self, s: LocalSymbol, t: LocalSymbol) -> Option<i64> {
        match (Self::line(s), Self::line(t)) {
            (Some(a), Some(b)) => Some(i64::from(self.ruling[&a] != self.ruling[&b])),
            (Some(a), None) => Some(self.with_line(a, t)),
            (None, Some(b)) => Some(self.with_line(b, s)),
            (None, None) => None,
        }
    }

    fn with_line(&self, a: u8, other: LocalSymbol) -> i64 {
        match Self::double_curve(other) {
            Some((i, j)) => i64::from(a == i || a == j),
            None => 0,
        }
    }

    /// (Z_P, s) from the ruling geometry.
    pub fn z_pairing(&self, s: LocalSymbol) -> i64 {
        Z_TERMS.iter().map(|&(t, k)| k * self.pair(t, s).expect("Z is supported on Y5")).sum()
    }

    /// (Z_P, Z_P) from the ruling geometry.
    pub fn z_self(&self) -> i64 {
        Z_TERMS.iter().map(|&(t, k)| k * self.z_pairing(t)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_rulings() {
        let o = RulingsOracle::new();
        for s in LOCAL_BASIS {
            assert_eq!(o.z_pairing(s), z_pairing(s), "{s:?}");
        }
        assert_eq!(o.z_self(), -8);
        assert_eq!(local_pairing(&z_site()), Num::int(-8));
    }

    #[test]
    fn fibre_transforms_are_orthogonal_to_z() {
        assert!(local_pairing(&vertical_total()).is_zero());
        assert!(local_pairing(&horizontal_total()).is_zero());
        assert_eq!(local_pairing(&diagonal_origin()), Num::int(-2));
        assert_eq!(local_pairing(&diagonal_terminus()), Num::int(-2));
    }

    #[test]
    fn reversing_one_edge_negates_z() {
        let z = z_site();
        let mut minus = LocalCycle::zero();
        minus.add_scaled(&Num::int(-1), &z);
        assert_eq!(z.reversed(true, false).unwrap(), minus);
        assert_eq!(z.reversed(false, true).unwrap(), minus);
        assert_eq!(z.reversed(true, true).unwrap(), z);
        assert_eq!(diagonal_origin().reversed(true, true).unwrap(), diagonal_terminus());
        assert!(diagonal_origin().reversed(true, false).is_none());
    }

    #[test]
    fn pairing_table_is_invariant_under_relabelling() {
        let o = RulingsOracle::new();
        for (a, b) in [(true, false), (false, true), (true, true)] {
            for s in LOCAL_BASIS.into_iter().filter(|s| !matches!(s, Diagonal1 | Diagonal4)) {
                for t in LOCAL_BASIS.into_iter().filter(|s| !matches!(s, Diagonal1 | Diagonal4)) {
                    let (s2, t2) = (s.reversed(a, b).unwrap(), t.reversed(a, b).unwrap());
                    assert_eq!(o.pair(s, t), o.pair(s2, t2), "{s:?} {t:?}");
                }
            }
        }
    }
}
