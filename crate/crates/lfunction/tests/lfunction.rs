use cochain_forms::{Eigenform, FormsContext};
use eisenstein_delta::RationalT;
use fq_algebra::{parse_poly, Fq, Num, PolyA};
use lfunction::{
    phi_fn, rankin_l, rankin_lhs, rankin_trick_check, FormPair, Hypothesis, LError, Reduction,
};
use proptest::prelude::*;

fn poly(q: u32, s: &str) -> PolyA {
    parse_poly(Fq::new(q).unwrap(), s).unwrap()
}

/// The coprime pair of levels T³+T+1 and T³+T²+1 over F_2, viewed at their product.
fn coprime_forms(ctx: &FormsContext) -> (Vec<Eigenform>, Vec<Eigenform>) {
    let (a, b) = (poly(2, "T^3+T+1"), poly(2, "T^3+T^2+1"));
    let level = &a * &b;
    (ctx.pullbacks(&level, &a).unwrap(), ctx.pullbacks(&level, &b).unwrap())
}

fn ints(v: &[(i64, i64)]) -> Vec<Num> {
    v.iter().map(|&(n, d)| Num::ratio(n, d)).collect()
}

#[test]
fn euler_product_matches_divisor_sum_to_degree_six() {
    let ctx = FormsContext::new();
    let (a, b) = coprime_forms(&ctx);
    for f in &a {
        for g in &b {
            let pair = FormPair::new(f, g).unwrap();
            let euler = pair.euler_series(6).unwrap();
            assert_eq!(euler, pair.dirichlet_series(6).unwrap(), "{} x {}", f.label(), g.label());
            let l = rankin_l(f, g).unwrap();
            for (k, c) in l.function.expansion(6) {
                assert_eq!(euler[k as usize], c);
            }
        }
    }
    let level = poly(2, "T^4+T^2+T");
    let forms = ctx.eigenforms(&level).unwrap();
    for f in &forms {
        for g in &forms {
            let pair = FormPair::new(f, g).unwrap();
            assert_eq!(pair.euler_series(6).unwrap(), pair.dirichlet_series(6).unwrap());
        }
    }
}

#[test]
fn eigenvalues_from_coefficients_agree_with_hecke() {
    let ctx = FormsContext::new();
    let level = poly(2, "T^4+T^2+T");
    let forms = ctx.eigenforms(&level).unwrap();
    for f in &forms {
        for g in &forms {
            let pair = FormPair::new(f, g).unwrap();
            for p in fq_algebra::primes_up_to(level.field(), 3) {
                let lf = pair.local_factor(&p).unwrap();
                let expected = match (f.new_level().divisible_by(&p), g.new_level().divisible_by(&p)) {
                    (false, false) => Reduction::BothGood,
                    (true, false) => Reduction::FirstBad,
                    (false, true) => Reduction::SecondBad,
                    (true, true) => Reduction::BothBad,
                };
                assert_eq!(lf.reduction, expected);
                // X coefficient is c(f,P) c(g,P) = λ_f λ_g / |P|²
                let norm = Num::int(p.norm().unwrap() as i64);
                let x1 = lf.numerator.series_div(&lf.denominator, 2)[1].clone();
                let ab = &(&f.eigenvalue(&p).unwrap() * &g.eigenvalue(&p).unwrap()) * &(&norm * &norm).inv().unwrap();
                assert_eq!(x1, ab, "{} {} at {p}", f.label(), g.label());
                assert!(lf.in_t().denominator().degree().unwrap() <= 4 * p.degree().unwrap());
            }
        }
    }
}

#[test]
fn simple_pole_at_one_exactly_for_equal_newforms() {
    let ctx = FormsContext::new();
    let level = poly(2, "T^4+T+1");
    let forms = ctx.eigenforms(&level).unwrap();
    let space = ctx.space(&level).unwrap();
    let x = Num::ratio(1, 2);
    let mut ratio: Option<Num> = None;
    for f in &forms {
        for g in &forms {
            let l = rankin_l(f, g).unwrap().function;
            let same = std::sync::Arc::ptr_eq(f.newform(), g.newform());
            assert_eq!(l.pole_order(&x), usize::from(same), "{} x {}", f.label(), g.label());
            if same {
                let residue = (&RationalT::from_ints(&[1, -2]) * &l).eval(&x).unwrap();
                let norm = space.petersson(f.cochain(), f.cochain()).unwrap();
                assert!(!residue.is_zero());
                let r = &residue / &norm;
                if let Some(prev) = &ratio {
                    assert_eq!(&r, prev, "residue is a level constant times <f,f>");
                }
                ratio = Some(r);
            } else {
                assert!(space.petersson(f.cochain(), g.cochain()).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn rankin_unfolding_is_exact() {
    let ctx = FormsContext::new();
    for level in [poly(2, "T^3+T+1"), poly(2, "T^4+T^2+T")] {
        let space = ctx.space(&level).unwrap();
        let forms = ctx.eigenforms(&level).unwrap();
        for f in &forms {
            for g in &forms {
                let r = rankin_trick_check(&space, f, g).unwrap();
                assert!(r.holds, "{} x {}: {} vs {}", r.f, r.g, r.lhs, r.rhs);
            }
        }
    }
    let (a, b) = coprime_forms(&ctx);
    let space = ctx.space(a[0].level()).unwrap();
    assert!(rankin_trick_check(&space, &a[0], &b[1]).unwrap().holds);
}

#[test]
fn coprime_levels_satisfy_the_functional_equation() {
    let ctx = FormsContext::new();
    let (a, b) = coprime_forms(&ctx);
    for f in &a {
        for g in &b {
            let phi = phi_fn(f, g).unwrap();
            assert_eq!(phi.hypothesis(), Hypothesis::CoprimeLevels);
            assert!(phi.satisfies_functional_equation(), "{} x {}", f.label(), g.label());
            let l = &phi.l_function().function;
            // a polynomial of degree 2 deg I - 4
            assert!(l.is_laurent_polynomial());
            assert_eq!(l.numerator().degree(), Some(8));
            let v0 = phi.value_at_zero().unwrap();
            let v1 = phi.value_at_one().unwrap();
            assert_eq!(v0, -v1.clone());
            assert_eq!(v1, phi.value_at_one_from_l().unwrap());
            assert!(phi.to_json().contains("\"phi_at_0\""));
        }
    }
    // the pair of conjugate-matched forms has rational L-function
    let l = rankin_l(&a[0], &b[0]).unwrap().function;
    let expected = ints(&[(1, 1), (2, 1), (9, 4), (9, 4), (1, 1), (-3, 2), (-6, 1), (-5, 1), (4, 1)]);
    assert_eq!(l.numerator().coeffs(), &expected[..]);
    assert_eq!(phi_fn(&a[0], &b[0]).unwrap().value_at_zero().unwrap(), Num::int(117));
}

#[test]
fn equal_forms_have_no_special_value_at_zero() {
    let ctx = FormsContext::new();
    let forms = ctx.eigenforms(&poly(2, "T^3+T+1")).unwrap();
    let phi = phi_fn(&forms[0], &forms[0]).unwrap();
    assert_eq!(phi.value_at_zero(), Err(LError::PoleAtZero));
    assert_eq!(phi.value_at_one(), Err(LError::PoleAtOne));
    let other = phi_fn(&forms[0], &forms[1]).unwrap();
    assert!(other.value_at_zero().is_ok());
    assert_eq!(other.hypothesis(), Hypothesis::SameLevel);
}

#[test]
fn same_level_pairs_are_flagged_and_may_fail_the_functional_equation() {
    let ctx = FormsContext::new();
    let forms = ctx.eigenforms(&poly(2, "T^4+T+1")).unwrap();
    let phi = phi_fn(&forms[0], &forms[1]).unwrap();
    assert_eq!(phi.hypothesis(), Hypothesis::SameLevel);
    assert!(!phi.satisfies_functional_equation());
}

#[test]
fn forms_of_different_ambient_levels_are_rejected() {
    let ctx = FormsContext::new();
    let a = ctx.eigenforms(&poly(2, "T^3+T+1")).unwrap();
    let b = ctx.eigenforms(&poly(2, "T^3+T^2+1")).unwrap();
    assert!(matches!(rankin_l(&a[0], &b[0]), Err(LError::LevelMismatch(..))));
}

#[test]
fn cubic_prime_level_over_f3() {
    let ctx = FormsContext::new();
    let level = poly(3, "T^3-T+1");
    let forms = ctx.eigenforms(&level).unwrap();
    let pair = FormPair::new(&forms[0], &forms[0]).unwrap();
    assert_eq!(pair.euler_series(4).unwrap(), pair.dirichlet_series(4).unwrap());
    let space = ctx.space(&level).unwrap();
    assert!(rankin_trick_check(&space, &forms[0], &forms[0]).unwrap().holds);
}

fn lhs_fixture() -> &'static (std::sync::Arc<cochain_forms::CuspSpace>, Vec<Eigenform>) {
    static CELL: std::sync::OnceLock<(std::sync::Arc<cochain_forms::CuspSpace>, Vec<Eigenform>)> =
        std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        let ctx = FormsContext::new();
        let level = poly(2, "T^3+T+1");
        (ctx.space(&level).unwrap(), ctx.eigenforms(&level).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn unfolded_side_is_bilinear(a in -3i64..4, b in -3i64..4) {
        let (space, forms) = lhs_fixture();
        let (f, g) = (forms[0].cochain(), forms[1].cochain());
        let base = rankin_lhs(space, f, g).unwrap();
        let scaled = rankin_lhs(space, &f.scale(&Num::int(a)), &g.scale(&Num::int(b))).unwrap();
        prop_assert_eq!(scaled, &RationalT::constant(Num::int(a * b)) * &base);
    }
}
