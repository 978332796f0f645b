use fq_algebra::{arith, embed_k, parse_poly, Fq, LaurentK, Num, NumPoly, PolyA};
use proptest::prelude::*;

fn poly(q: u32, coeffs: &[u32]) -> PolyA {
    let f = Fq::new(q).unwrap();
    PolyA::from_indices(f, &coeffs.iter().map(|c| c % q).collect::<Vec<_>>())
}

fn monic(q: u32, mut coeffs: Vec<u32>) -> PolyA {
    coeffs.push(1);
    poly(q, &coeffs)
}

#[test]
fn field_sizes_and_errors() {
    for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        let f = Fq::new(q).unwrap();
        assert_eq!(f.elements().count() as u32, q);
    }
    assert!(Fq::new(6).is_err());
    assert!(Fq::new(1).is_err());
}

#[test]
fn norms_of_examples() {
    let f = Fq::new(2).unwrap();
    assert_eq!(arith::norm(&parse_poly(f, "T^3+T+1").unwrap()).unwrap(), 8);
    let f3 = Fq::new(3).unwrap();
    assert_eq!(arith::norm(&parse_poly(f3, "T^3-T+1").unwrap()).unwrap(), 27);
}

#[test]
fn serde_roundtrip() {
    let p = parse_poly(Fq::new(3).unwrap(), "T^2+2").unwrap();
    let s = serde_json::to_string(&p).unwrap();
    let back: PolyA = serde_json::from_str(&s).unwrap();
    assert_eq!(p, back);
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in prop::collection::vec(0u32..3, 1..6), b in prop::collection::vec(0u32..3, 1..6)) {
        let (a, b) = (monic(3, a), monic(3, b));
        prop_assert_eq!(arith::norm(&(&a * &b)).unwrap(), arith::norm(&a).unwrap() * arith::norm(&b).unwrap());
    }

    #[test]
    fn factorization_recombines(a in prop::collection::vec(0u32..2, 0..9)) {
        let a = monic(2, a);
        let fs = arith::factor(&a).unwrap();
        let prod = fs.iter().fold(PolyA::one(a.field()), |acc, p| &acc * p);
        prop_assert_eq!(prod, a);
        prop_assert!(fs.iter().all(arith::is_irreducible));
    }

    #[test]
    fn moebius_sums_vanish(a in prop::collection::vec(0u32..2, 1..8)) {
        let a = monic(2, a);
        prop_assume!(arith::is_squarefree(&a));
        let divs = arith::monic_divisors(&a).unwrap();
        let r = arith::factor(&a).unwrap().len();
        prop_assert_eq!(divs.len(), 1 << r);
        let s: i32 = divs.iter().map(|d| i32::from(arith::moebius(d).unwrap())).sum();
        prop_assert_eq!(s, 0);
    }

    #[test]
    fn valuation_is_additive(a in prop::collection::vec(0u32..5, 1..6), b in prop::collection::vec(0u32..5, 1..6)) {
        let (a, b) = (monic(5, a), monic(5, b));
        let f = a.field();
        let x = embed_k(&PolyA::one(f), &a, 12).unwrap();
        let y = LaurentK::from_poly(&b);
        prop_assert_eq!((&x * &y).valuation().unwrap(), Some(a.degree().unwrap() as i64 - b.degree().unwrap() as i64));
    }

    #[test]
    fn division_inverts_multiplication(a in prop::collection::vec(0u32..3, 1..6), b in prop::collection::vec(0u32..3, 1..6)) {
        let (a, b) = (monic(3, a), monic(3, b));
        let x = embed_k(&a, &b, 10).unwrap();
        let back = &x * &LaurentK::from_poly(&b);
        prop_assert_eq!(back.truncated(10 - b.degree().unwrap() as i64).unwrap(), LaurentK::from_poly(&a).truncated(10 - b.degree().unwrap() as i64).unwrap());
    }

    #[test]
    fn gcd_divides_both(a in prop::collection::vec(0u32..2, 1..8), b in prop::collection::vec(0u32..2, 1..8)) {
        let (a, b) = (monic(2, a), monic(2, b));
        let (g, s, t) = a.xgcd(&b).unwrap();
        prop_assert!(a.divisible_by(&g) && b.divisible_by(&g));
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn exact_numbers_form_a_field(x in -20i64..20, y in -20i64..20, d in 1i64..9) {
        prop_assume!(x != 0 || y != 0);
        let k = fq_algebra::NumberField::quadratic(&num_bigint::BigInt::from(2 + 3 * (d % 2)));
        let a = &Num::int(x) + &(&Num::int(y) * &Num::generator(&k));
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        let p = NumPoly::new(vec![Num::int(1), a.clone()]);
        prop_assert_eq!(p.eval(&Num::int(d)), &Num::int(1) + &(&a * &Num::int(d)));
    }
}
