use std::sync::Arc;

use cochain_forms::{
    coefficients_up_to, first_coefficient, newform_coefficient, CuspSpace, Divisor, FormsContext, Matrix,
};
use fq_algebra::{arith, parse_poly, Fq, Num, NumPoly, PolyA};
use proptest::prelude::*;

fn poly(q: u32, s: &str) -> PolyA {
    parse_poly(Fq::new(q).unwrap(), s).unwrap()
}

fn charpoly(space: &CuspSpace, p: &PolyA) -> NumPoly {
    space.hecke_on_basis(p).unwrap().charpoly()
}

#[test]
fn hecke_charpolys_match_reference_values() {
    let cases: &[(&str, &str, &[i64])] = &[
        ("T^3+T+1", "T", &[-1, 2, 1]),
        ("T^3+T+1", "T+1", &[-2, 0, 1]),
        ("T^3+T+1", "T^2+T+1", &[-1, -2, 1]),
        ("T^3+T^2+1", "T", &[-2, 0, 1]),
        ("T^3+T^2+1", "T+1", &[-1, 2, 1]),
        ("T^4+T+1", "T", &[-1, -4, -3, 2, 1]),
        ("T^4+T+1", "T^2+T+1", &[0, 0, 4, 4, 1]),
    ];
    for (level, p, expected) in cases {
        let s = CuspSpace::for_level(&poly(2, level)).unwrap();
        assert_eq!(charpoly(&s, &poly(2, p)), NumPoly::from_ints(expected), "{level} at {p}");
    }
}

#[test]
fn hecke_operators_commute_and_are_self_adjoint() {
    let s = CuspSpace::for_level(&poly(2, "T^4+T^2+T")).unwrap();
    let primes: Vec<PolyA> = arith::primes_up_to(s.level().field(), 2);
    let gram = s.gram(&s.basis_cochains()).unwrap();
    let mats: Vec<Matrix> = primes.iter().map(|p| s.hecke_on_basis(p).unwrap()).collect();
    for a in &mats {
        for b in &mats {
            assert_eq!(a.mul(b), b.mul(a));
        }
    }
    for (p, m) in primes.iter().zip(&mats) {
        if s.level().divisible_by(p) {
            continue;
        }
        // <T f, g> = <f, T g> on the basis: M^t G = G M
        assert_eq!(m.transpose().mul(&gram), gram.mul(m), "T_{p}");
    }
}

#[test]
fn prime_level_newforms_are_conjugate_over_a_quadratic_field() {
    let ctx = FormsContext::new();
    let level = poly(2, "T^3+T+1");
    let forms = ctx.newforms(&level).unwrap();
    assert_eq!(forms.len(), 2);
    let t = poly(2, "T");
    let l0 = forms[0].eigenvalue(&t).unwrap();
    let l1 = forms[1].eigenvalue(&t).unwrap();
    assert_eq!(l0.quadratic_conjugate(), l1);
    // both are roots of x^2 + 2x - 1
    for l in [&l0, &l1] {
        assert!((&(l * l) + &(l * &Num::int(2)) - Num::one()).is_zero());
        assert_eq!(l.field().unwrap().quadratic_radicand().unwrap(), 2.into());
    }
    for f in forms.iter() {
        assert!(first_coefficient(f.space(), f.cochain()).unwrap().is_one());
        assert!(f.space().is_harmonic(f.cochain()).unwrap());
    }
    let space = forms[0].space();
    assert!(space.petersson(forms[0].cochain(), forms[1].cochain()).unwrap().is_zero());
    assert!(!space.petersson(forms[0].cochain(), forms[0].cochain()).unwrap().is_zero());
}

#[test]
fn composite_level_splits_into_old_and_new() {
    let ctx = FormsContext::new();
    let level = poly(2, "T^4+T^2+T");
    let space = ctx.space(&level).unwrap();
    assert_eq!(space.dim(), 6);
    assert_eq!(ctx.old_subspace(&level).unwrap().cols(), 4);
    assert_eq!(ctx.new_subspace(&level).unwrap().cols(), 2);
    let forms = ctx.eigenforms(&level).unwrap();
    assert_eq!(forms.len(), 4);
    let fs: Vec<_> = forms.iter().map(|f| f.cochain().clone()).collect();
    for f in &fs {
        assert!(space.coordinates(f).is_ok());
    }
    let g = space.gram(&fs).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            // distinct newforms are orthogonal; a pulled-back form is orthogonal to new ones
            if i != j {
                assert!(g.get(i, j).is_zero(), "({i},{j})");
            }
        }
    }
    // U_T acts on the new forms with eigenvalue of absolute value 1 (for q = 2: -1 or 1)
    let t = poly(2, "T");
    for f in forms.iter().filter(|f| f.new_level() == &level) {
        let l = f.eigenvalue(&t).unwrap();
        assert!(l == Num::one() || l == Num::int(-1), "{l}");
    }
}

#[test]
fn analytic_and_recursive_coefficients_agree() {
    let ctx = FormsContext::new();
    for (q, level) in [(2, "T^3+T+1"), (2, "T^3+T^2+T"), (3, "T^3-T+1")] {
        let level = poly(q, level);
        for nf in ctx.newforms(&level).unwrap().iter() {
            let table = coefficients_up_to(nf.space(), nf.cochain(), 3).unwrap();
            assert_eq!(table.len(), (1..=3).map(|d| (q as usize).pow(d)).sum::<usize>() + 1);
            for (m, c) in &table {
                let rec = newform_coefficient(nf, &Divisor::new(m.clone(), 0)).unwrap();
                assert_eq!(*c, rec, "level {level}, m = {m}");
            }
        }
    }
}

#[test]
fn infinity_part_scales_by_inverse_norm() {
    let ctx = FormsContext::new();
    let level = poly(2, "T^3+T+1");
    let nf = ctx.newforms(&level).unwrap()[0].clone();
    let one = PolyA::one(level.field());
    for j in 0..4u32 {
        let d = Divisor::new(one.clone(), j);
        let c = cochain_forms::coefficient(nf.space(), nf.cochain(), &d).unwrap();
        assert_eq!(c, Num::int(2).pow(-(j as i64)));
        assert_eq!(newform_coefficient(&nf, &d).unwrap(), c);
    }
}

#[test]
fn cubic_level_over_f3() {
    let ctx = FormsContext::new();
    let level = poly(3, "T^3-T+1");
    let space = ctx.space(&level).unwrap();
    assert_eq!(space.dim(), 3);
    let forms = ctx.newforms(&level).unwrap();
    let total: usize = forms.iter().map(|f| f.field().map_or(1, |k| k.degree())).sum();
    assert_eq!(total, 3);
}

fn shared_level() -> (FormsContext, PolyA) {
    (FormsContext::new(), poly(2, "T^4+T^3+1"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hecke_images_stay_cuspidal(idx in 0usize..6, coeffs in proptest::collection::vec(-3i64..4, 4)) {
        let (ctx, level) = shared_level();
        let space: Arc<CuspSpace> = ctx.space(&level).unwrap();
        let primes = arith::primes_up_to(level.field(), 3);
        let p = &primes[idx % primes.len()];
        let f = space
            .basis_cochains()
            .iter()
            .zip(&coeffs)
            .fold(cochain_forms::Cochain::new(level.clone(), vec![Num::zero(); space.edge_count()]), |acc, (b, &c)| {
                acc.add(&b.scale(&Num::int(c)))
            });
        let img = space.hecke(p, &f).unwrap();
        prop_assert!(space.is_harmonic(&img).unwrap());
        prop_assert!(space.coordinates(&img).is_ok());
    }

    #[test]
    fn coefficients_are_multiplicative(a in 0usize..6, b in 0usize..6) {
        let ctx = FormsContext::new();
        let level = poly(2, "T^3+T+1");
        let nf = ctx.newforms(&level).unwrap()[0].clone();
        let primes = arith::primes_up_to(level.field(), 2);
        let (p, r) = (&primes[a % primes.len()], &primes[b % primes.len()]);
        prop_assume!(p != r);
        let c = |m: PolyA| newform_coefficient(&nf, &Divisor::new(m, 0)).unwrap();
        prop_assert_eq!(c(p * r), &c(p.clone()) * &c(r.clone()));
    }
}
