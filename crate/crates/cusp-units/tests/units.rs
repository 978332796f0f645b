use cusp_units::{
    build_xi, f_indices, factorization_check, manin_drinfeld_bound, ord_cusp, CuspDivisor, Curve, Level, UnitExpr,
    UnitsError,
};
use fq_algebra::{arith, parse_poly, Fq, PolyA};
use proptest::prelude::*;

fn level(q: u32, s: &str) -> Level {
    Level::new(&parse_poly(Fq::new(q).unwrap(), s).unwrap()).unwrap()
}

/// Every square-free monic level of degree 1..=4 over F_2 and 1..=3 over F_3.
fn sweep() -> Vec<Level> {
    let mut out = Vec::new();
    for (q, max) in [(2u32, 4usize), (3, 3)] {
        let f = Fq::new(q).unwrap();
        for d in 1..=max {
            for p in arith::monic_polys(f, d) {
                if arith::is_squarefree(&p) {
                    out.push(Level::new(&p).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn modular_unit_divisor_is_the_moebius_combination() {
    for l in sweep() {
        let div = UnitExpr::modular_unit(&l).divisor(&l);
        let c = l.product_one_minus(1);
        for d in l.divisors() {
            assert_eq!(div.coefficient(d), c * l.moebius(d), "level {}", l.poly());
        }
        assert_eq!(div.degree(), 0);
        assert_eq!(UnitExpr::modular_unit(&l).weight(l.q()), 0);
    }
    // I = f0 f1 over F_2: (1-|f0|)(1-|f1|)(P_1 - P_f0 - P_f1 + P_I)
    let l = level(2, "T^2+T");
    let div = UnitExpr::modular_unit(&l).divisor(&l);
    assert_eq!(div.coefficients(), &[1, -1, -1, 1]);
}

#[test]
fn orders_at_cusps_match_closed_forms() {
    let l = level(2, "T^2+T");
    let t = l.mask_of(&parse_poly(Fq::new(2).unwrap(), "T").unwrap()).unwrap();
    assert_eq!(ord_cusp(&l, t, t), 4);
    for l in sweep() {
        for d in l.divisors() {
            let delta = UnitExpr::delta_scaled(&l, 0).divisor(&l);
            assert_eq!(delta.coefficient(d), l.norm(l.complement(d)));
            let delta_i = UnitExpr::delta_scaled(&l, l.full()).divisor(&l);
            assert_eq!(delta_i.coefficient(d), l.norm(d));
        }
    }
}

#[test]
fn simple_units_are_supported_at_one_cusp() {
    for l in sweep() {
        let prod = l.product_one_minus(2);
        for a in l.divisors() {
            let div = UnitExpr::simple(&l, a).divisor(&l);
            for b in l.divisors() {
                let expected = if a == b { prod * l.moebius(a) } else { 0 };
                assert_eq!(div.coefficient(b), expected, "level {} a={a} b={b}", l.poly());
            }
        }
    }
}

#[test]
fn inductive_norm_identity() {
    // Σ_{d|I} μ(I/d) |I|² |(a,d)|² / |[a,d]|² = μ(a) Π(1 - |f|²)
    for l in sweep() {
        let n = l.norm(l.full());
        for a in l.divisors() {
            let s: i64 = l
                .divisors()
                .map(|d| l.moebius(l.complement(d)) * (n * l.norm(a & d) / l.norm(a | d)).pow(2))
                .sum();
            assert_eq!(s, l.moebius(a) * l.product_one_minus(2));
        }
    }
}

#[test]
fn divisor_sum_over_cofactor_of_f0() {
    // Σ_{a|(I/f0)} |(a,d)|/|[a,d]| = Π_{f|(I/f0)} (1 + 1/|f|) for d | I/f0, checked after clearing denominators
    for l in sweep() {
        let idx = f_indices(&l).unwrap();
        let rest = l.complement(1);
        let big = l.norm(rest);
        let rhs: i64 = l.primes().iter().enumerate().skip(1).map(|(i, _)| l.norm(1 << i) + 1).product();
        for &d in &idx {
            let lhs: i64 = idx.iter().map(|&a| big * l.norm(a & d) / l.norm(a | d)).sum();
            assert_eq!(lhs, rhs, "level {} d={d}", l.poly());
        }
    }
}

#[test]
fn factorization_of_the_modular_unit() {
    let l = level(2, "T^2+T");
    assert_eq!(l.kappa(), 9);
    for l in sweep() {
        let r = factorization_check(&l).unwrap();
        assert!(r.exponents_agree, "level {}: {:?} vs {:?}", r.level, r.lhs, r.rhs);
        assert!(r.divisors_agree);
        let prod = l.product_one_minus(2);
        for a in f_indices(&l).unwrap() {
            let fa = UnitExpr::f_unit(&l, a).unwrap();
            assert_eq!(fa.weight(l.q()), 0);
            let div = fa.divisor(&l);
            let expected = CuspDivisor::point(&l, a, prod * l.moebius(a))
                .axpy(1, &CuspDivisor::point(&l, a | 1, -prod * l.moebius(a)));
            assert_eq!(div, expected);
            assert_eq!(div.degree(), 0);
        }
    }
}

#[test]
fn manin_drinfeld_certificates() {
    let cert = manin_drinfeld_bound(&level(2, "T^2+T"));
    assert_eq!(cert.bound, 9);
    let prime = manin_drinfeld_bound(&level(3, "T^2+1"));
    assert_eq!(prime.witnesses.len(), 1);
    assert_eq!(prime.bound, 80);
    for l in sweep() {
        let c = manin_drinfeld_bound(&l);
        assert_eq!(c.bound, l.product_one_minus(2).abs());
        assert_eq!(c.witnesses.len(), (1usize << l.primes().len()) * ((1 << l.primes().len()) - 1) / 2);
        assert!(c.verified(), "level {}", c.level);
    }
}

#[test]
fn motivic_element_satisfies_the_cocycle_condition() {
    for l in sweep() {
        let xi = build_xi(&l).unwrap();
        assert!(xi.divisor_sum().is_empty());
        let n = f_indices(&l).unwrap().len();
        assert_eq!(xi.terms().len(), 1 + 2 * n);
        assert!(xi.terms().iter().all(|t| t.unit.weight(l.q()) == 0));
        assert_eq!(xi.terms()[0].curve, Curve::Diagonal);
    }
}

#[test]
fn non_square_free_and_trivial_levels_are_rejected() {
    let f = Fq::new(2).unwrap();
    assert!(matches!(Level::new(&parse_poly(f, "T^2").unwrap()), Err(UnitsError::BadLevel(_))));
    let one = Level::new(&PolyA::one(f)).unwrap();
    assert!(matches!(build_xi(&one), Err(UnitsError::NoPrimeFactor(_))));
}

proptest! {
    #[test]
    fn weight_zero_units_have_degree_zero(e in proptest::collection::vec(-5i64..6, 4)) {
        let l = level(2, "T^2+T");
        let mut u = UnitExpr::one(&l);
        for (d, k) in e.iter().enumerate() {
            u = u.mul(&UnitExpr::delta_scaled(&l, d as u32).pow(*k));
        }
        let div = u.divisor(&l);
        prop_assert_eq!(u.weight(l.q()) == 0, div.degree() == 0);
    }
}
