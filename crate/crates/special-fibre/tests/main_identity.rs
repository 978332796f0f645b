use std::sync::{Arc, OnceLock};

use cochain_forms::{Cochain, CuspSpace, Eigenform, FormsContext};
use eisenstein_delta::LogDeltaTable;
use fq_algebra::{parse_poly, Fq, Num, PolyA};
use lfunction::Hypothesis;
use num_bigint::BigInt;
use proptest::prelude::*;
use special_fibre::{
    closed_form, diagonal_logs, find_admissible_instance, pairing, regulator, verify_with, GlobalSymbol, LevelData,
    SpecialCycle,
};

fn poly(q: u32, s: &str) -> PolyA {
    parse_poly(Fq::new(q).unwrap(), s).unwrap()
}

struct Fixture {
    space: Arc<CuspSpace>,
    data: LevelData,
    first: Vec<Eigenform>,
    second: Vec<Eigenform>,
}

/// The instance returned by the search, with its forms.
fn instance() -> &'static Fixture {
    static CELL: OnceLock<Fixture> = OnceLock::new();
    CELL.get_or_init(|| {
        let ctx = FormsContext::new();
        let inst = find_admissible_instance(&ctx, &[2, 3], 6).unwrap();
        let space = ctx.space(&inst.level).unwrap();
        let data = LevelData::new(&space).unwrap();
        let first = ctx.pullbacks(&inst.level, &inst.first).unwrap();
        let second = ctx.pullbacks(&inst.level, &inst.second).unwrap();
        Fixture { space, data, first, second }
    })
}

#[test]
fn search_finds_the_smallest_coprime_split() {
    let ctx = FormsContext::new();
    let inst = find_admissible_instance(&ctx, &[2, 3], 6).unwrap();
    assert_eq!(inst.q, 2);
    assert_eq!(inst.level, poly(2, "T^6+T^2+T"));
    assert_eq!(inst.first, poly(2, "T^3+T^2+T"));
    assert_eq!(inst.second, poly(2, "T^3+T^2+1"));
    assert_eq!(inst.new_dims, (2, 2));
    assert!(find_admissible_instance(&ctx, &[2, 3], 5).is_err());
}

#[test]
fn regulator_pairing_matches_the_analytic_sum() {
    let fx = instance();
    for f in &fx.first {
        for g in &fx.second {
            let r = verify_with(&fx.data, f, g, 0).unwrap();
            assert_eq!(r.hypothesis, Hypothesis::CoprimeLevels);
            assert!(r.b_equals_c, "{}", r.to_json());
            assert!(r.mismatched_edges.is_empty());
            assert!(r.a_equals_normalized, "{}", r.to_json());
            // the stated normalization of the analytic sum is off by q(q + 1)
            assert!(!r.a_equals_b);
            assert_eq!(r.analytic_sum, &r.phi0 * &Num::int(6));
        }
    }
}

#[test]
fn frozen_values_on_the_instance() {
    let fx = instance();
    let r = verify_with(&fx.data, &fx.first[0], &fx.second[0], 0).unwrap();
    assert_eq!(r.kappa, 135);
    let root2 = r.phi0.field().cloned().expect("quadratic field");
    let v = |a: i64, b: i64| &Num::int(a) + &(&Num::int(b) * &Num::generator(&root2));
    assert_eq!(r.phi0.to_string(), "22*sqrt(2) + 55");
    assert_eq!(r.phi0, v(55, 22));
    assert_eq!(r.pairing, v(44550, 17820));
}

#[test]
fn diagonal_logs_are_kappa_times_the_modular_unit_table() {
    let fx = instance();
    let logs = diagonal_logs(&fx.data).unwrap();
    let kappa = BigInt::from(fx.data.level.kappa());
    for (i, l) in logs.iter().enumerate() {
        assert_eq!(l, &(fx.data.table.value(i) * &kappa));
    }
}

#[test]
fn pairing_is_independent_of_the_anchor() {
    let fx = instance();
    let (f, g) = (&fx.first[1], &fx.second[0]);
    let base = verify_with(&fx.data, f, g, 0).unwrap();
    for shift in [-3, 1, 17] {
        let moved = verify_with(&fx.data, f, g, shift).unwrap();
        assert_eq!(moved.pairing, base.pairing);
    }
}

#[test]
fn fibre_curves_contribute_only_global_terms() {
    let fx = instance();
    let graph = fx.space.graph();
    let r = regulator(&fx.data.xi, graph, 0).unwrap();
    assert!(r.global().all(|(s, _)| matches!(s, GlobalSymbol::Fibre { .. })));
    assert!(r.sites().all(|(site, _)| site.first == site.second));
    // dropping every site leaves a cycle that pairs to zero
    let mut only_fibres = special_fibre::OneCycle::zero();
    for (s, k) in r.global() {
        only_fibres.add_global(*s, k);
    }
    let z = SpecialCycle::new(fx.first[0].cochain(), fx.second[0].cochain());
    assert!(pairing(graph, &only_fibres, &z).is_zero());
}

#[test]
fn same_level_pairs_still_match_route_by_route() {
    let ctx = FormsContext::new();
    let level = poly(2, "T^4+T+1");
    let space = ctx.space(&level).unwrap();
    let data = LevelData::new(&space).unwrap();
    let forms = ctx.eigenforms(&level).unwrap();
    let r = verify_with(&data, &forms[0], &forms[1], 0).unwrap();
    assert_eq!(r.hypothesis, Hypothesis::SameLevel);
    assert!(r.b_equals_c);
}

#[test]
fn closed_form_ignores_edge_orientation() {
    // the summand depends on e only through L(o) + L(t) and f(e) g(e)
    let fx = instance();
    let graph = fx.space.graph();
    let (f, g) = (fx.first[0].cochain(), fx.second[1].cochain());
    let base = closed_form(graph, &fx.data.table, f, g);
    let flip = |c: &Cochain| c.scale(&Num::int(-1));
    assert_eq!(closed_form(graph, &fx.data.table, &flip(f), &flip(g)), base);
}

#[test]
fn disjoint_support_gives_zero() {
    let fx = instance();
    let graph = fx.space.graph();
    let n = graph.finite_edges().len();
    let f = fx.first[0].cochain();
    let i = f.values().iter().position(|x| !x.is_zero()).unwrap();
    let mut only = vec![Num::zero(); n];
    only[i] = Num::one();
    let mut other = vec![Num::zero(); n];
    other[(i + 1) % n] = Num::one();
    let (a, b) = (Cochain::new(graph.level().clone(), only), Cochain::new(graph.level().clone(), other));
    let r = regulator(&fx.data.xi, graph, 0).unwrap();
    assert!(pairing(graph, &r, &SpecialCycle::new(&a, &b)).is_zero());
    let table = LogDeltaTable::modular_unit(graph).unwrap();
    assert!(closed_form(graph, &table, &a, &b).is_zero());
    let zero = Cochain::new(graph.level().clone(), vec![Num::zero(); n]);
    assert!(pairing(graph, &r, &SpecialCycle::new(&zero, f)).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pairing_is_bilinear(a in -4i64..5, b in -4i64..5) {
        let fx = instance();
        let graph = fx.space.graph();
        let r = regulator(&fx.data.xi, graph, 0).unwrap();
        let (f, g) = (fx.first[0].cochain(), fx.second[0].cochain());
        let base = pairing(graph, &r, &SpecialCycle::new(f, g));
        let scaled = pairing(graph, &r, &SpecialCycle::new(&f.scale(&Num::int(a)), &g.scale(&Num::int(b))));
        prop_assert_eq!(scaled, &base * &Num::int(a * b));
    }
}
