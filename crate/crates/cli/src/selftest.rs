//! The invariant suite run by `dmf selftest`.

use serde::Serialize;
use serde_json::json;

use bruhat_tits::QuotientGraph;
use cochain_forms::{coefficients_up_to, newform_coefficient, Divisor, FormsContext};
use cusp_units::{build_xi, factorization_check, manin_drinfeld_bound, Level};
use eisenstein_delta::kronecker::kronecker_check;
use eisenstein_delta::logdelta::dlog_level_cycle_sums;
use eisenstein_delta::{eisenstein_e, f_series, lambda_fn, LogDeltaTable, RationalT};
use fq_algebra::Num;
use lfunction::rankin_trick_check;
use special_fibre::{local_pairing, z_site, RulingsOracle, LOCAL_BASIS};

use crate::commands::{csv, envelope, Outcome};
use crate::config::{CliError, Format, RunConfig};

/// One named check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

/// Runs every check that applies to the configured level.
pub fn run_checks(cfg: &RunConfig) -> Result<Vec<Check>, CliError> {
    let level = &cfg.level;
    let ctx = FormsContext::new();
    let space = ctx.space(level)?;
    let g: &QuotientGraph = space.graph();
    let mut out = Vec::new();

    out.push(check(
        "genus",
        space.dim() == g.betti(),
        format!("dim {} betti {}{}", space.dim(), g.betti(), if space.dim() == 0 { "; the cuspidal space is empty" } else { "" }),
    ));

    let c = Num::int(i64::from(cfg.field.q())).inv().expect("q is nonzero");
    let mut odd = true;
    let mut derivative = true;
    let s_minus = &RationalT::t_pow(-1) - &RationalT::one();
    for rec in g.finite_edges() {
        let e = &rec.representative;
        for e in [e.clone(), e.reversed()] {
            let l = lambda_fn(&e)?;
            odd &= (&l + &l.substitute_reciprocal(&c)).is_zero();
        }
        let lhs = &eisenstein_e(&e.terminus())? - &eisenstein_e(&e.origin())?;
        derivative &= lhs == &s_minus * &f_series(e)?;
    }
    out.push(check("completed_series_odd", odd, format!("{} edges", g.finite_edges().len())));
    out.push(check("vertex_derivative_is_edge_series", derivative, ""));

    if level.degree() == Some(0) {
        out.push(check("log_delta", true, "skipped: no modular unit at level 1"));
    } else {
        let table = LogDeltaTable::modular_unit(g)?;
        let edges_ok = table.verify_on_edges(g).is_ok();
        let cycles = dlog_level_cycle_sums(g)?;
        let cycles_ok = cycles.iter().all(|s| s == &0.into());
        out.push(check("log_delta", edges_ok && cycles_ok, format!("{} cycles", cycles.len())));

        let k = kronecker_check(g)?;
        out.push(check("kronecker_balanced", k.balanced_holds(), format!("{} vertex pairs", k.pairs)));

        let l = Level::new(level)?;
        let fact = factorization_check(&l)?;
        out.push(check("unit_factorization", fact.exponents_agree && fact.divisors_agree, format!("kappa {}", fact.kappa)));
        let cert = manin_drinfeld_bound(&l);
        out.push(check("manin_drinfeld", cert.verified(), format!("N {}", cert.bound)));
        out.push(check("cocycle", build_xi(&l)?.divisor_sum().is_empty(), ""));
    }

    let forms = ctx.eigenforms(level)?;
    let mut rankin = true;
    for f in &forms {
        for h in &forms {
            rankin &= rankin_trick_check(&space, f, h)?.holds;
        }
    }
    out.push(check("rankin_unfolding", rankin, format!("{} pairs", forms.len() * forms.len())));

    let mut fourier = true;
    for nf in ctx.newforms(level)?.iter() {
        for (m, c) in coefficients_up_to(nf.space(), nf.cochain(), 2)? {
            fourier &= newform_coefficient(nf, &Divisor::new(m, 0))? == c;
        }
    }
    out.push(check("fourier_recursive_vs_analytic", fourier, "divisors of degree <= 2"));

    let oracle = RulingsOracle::new();
    let table_ok = LOCAL_BASIS.iter().all(|s| oracle.z_pairing(*s) == special_fibre::local::z_pairing(*s))
        && oracle.z_self() == -8
        && local_pairing(&z_site()) == Num::int(-8);
    out.push(check("intersection_table", table_ok, "(Z,Z) = -8"));
    Ok(out)
}

/// Renders the suite.
pub fn selftest(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let checks = run_checks(cfg)?;
    let passed = checks.iter().all(|c| c.passed);
    let output = match cfg.format {
        Format::Json => envelope(cfg, "selftest", json!({ "passed": passed, "checks": checks })),
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                checks.iter().map(|c| vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()]).collect();
            csv(&["check", "passed", "detail"], &rows)
        }
        Format::Dot => return Err(CliError::Usage("--format dot is not available for selftest".into())),
    };
    Ok(Outcome { output, passed })
}
