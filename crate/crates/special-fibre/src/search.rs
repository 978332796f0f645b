//! Search for the smallest level carrying a pair of forms new at coprime factors.

use fq_algebra::{arith, Fq, PolyA};
use cochain_forms::FormsContext;
use serde::Serialize;

use crate::error::FibreError;

/// A level I = I₁ I₂ with coprime factors, each with a nonzero new subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub q: u32,
    pub level: PolyA,
    pub first: PolyA,
    pub second: PolyA,
    /// Dimensions of the new subspaces at the two factors.
    pub new_dims: (usize, usize),
}

/// Walks levels by degree, then q ∈ `fields`, then in canonical polynomial order,
/// and returns the first square-free level admitting such a split.
pub fn find_admissible_instance(ctx: &FormsContext, fields: &[u32], max_degree: usize) -> Result<Instance, FibreError> {
    for degree in 2..=max_degree {
        for &q in fields {
            let field = Fq::new(q)?;
            for level in arith::monic_polys(field, degree) {
                if !arith::is_squarefree(&level) {
                    continue;
                }
                if let Some(found) = split(ctx, q, &level)? {
                    return Ok(found);
                }
            }
        }
    }
    Err(FibreError::NoInstance(max_degree))
}

fn split(ctx: &FormsContext, q: u32, level: &PolyA) -> Result<Option<Instance>, FibreError> {
    let divisors = arith::monic_divisors(level)?;
    for first in &divisors {
        let (second, _) = level.div_rem(first)?;
        let (d1, d2) = (first.degree().unwrap_or(0), second.degree().unwrap_or(0));
        // each unordered split once, and both factors need forms
        if d1 == 0 || d2 == 0 || (d1, first) > (d2, &second) {
            continue;
        }
        let n1 = ctx.new_subspace(first)?.cols();
        if n1 == 0 {
            continue;
        }
        let n2 = ctx.new_subspace(&second)?.cols();
        if n2 > 0 {
            return Ok(Some(Instance { q, level: level.clone(), first: first.clone(), second, new_dims: (n1, n2) }));
        }
    }
    Ok(None)
}
