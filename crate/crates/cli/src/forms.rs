//! Locating eigenforms by label and enumerating admissible pairs.

use cochain_forms::{Eigenform, FormsContext};
use fq_algebra::{arith, parse_poly, PolyA};

use crate::config::CliError;

/// Pairs (f, g) with f new at I₁ and g new at I₂ for every unordered split I = I₁ I₂.
pub fn admissible_pairs(ctx: &FormsContext, level: &PolyA) -> Result<Vec<(Eigenform, Eigenform)>, CliError> {
    let mut out = Vec::new();
    for first in arith::monic_divisors(level)? {
        let (second, _) = level.div_rem(&first)?;
        let (d1, d2) = (first.degree().unwrap_or(0), second.degree().unwrap_or(0));
        if d1 == 0 || d2 == 0 || (d1, &first) > (d2, &second) {
            continue;
        }
        let a = ctx.pullbacks(level, &first)?;
        if a.is_empty() {
            continue;
        }
        let b = ctx.pullbacks(level, &second)?;
        for f in &a {
            for g in &b {
                out.push((f.clone(), g.clone()));
            }
        }
    }
    Ok(out)
}

/// Resolves a label `NEWLEVEL#k` to the corresponding form viewed at `level`.
pub fn form_by_label(ctx: &FormsContext, level: &PolyA, label: &str) -> Result<Eigenform, CliError> {
    let bad = |why: &str| CliError::Usage(format!("form label {label:?}: {why}"));
    let (nl, idx) = label.rsplit_once('#').ok_or_else(|| bad("expected NEWLEVEL#INDEX"))?;
    let new_level = parse_poly(level.field(), nl).map_err(|e| bad(&e.to_string()))?;
    let idx: usize = idx.trim().parse().map_err(|_| bad("index is not a number"))?;
    if !level.divisible_by(&new_level) {
        return Err(bad(&format!("{new_level} does not divide {level}")));
    }
    ctx.pullbacks(level, &new_level)?
        .into_iter()
        .find(|f| f.newform().index() == idx)
        .ok_or_else(|| bad("no newform with that index"))
}
