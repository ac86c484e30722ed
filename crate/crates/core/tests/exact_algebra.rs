mod common;

use abmod::algebra::{q, rf, weighted_degree, AlgebraError, MPoly, RatFunc, Var, ZPoly};
use common::{mono, poly, SEED};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

const XY: [&str; 2] = ["x", "y"];

fn cfg() -> Config {
    Config {
        cases: 64,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (
        prop::collection::vec(-6i64..=6, 0..4),
        prop::collection::vec(-4i64..=4, 1..3),
    )
        .prop_filter_map("zero denominator", |(n, d)| {
            RatFunc::new(ZPoly::from_i64s(&n), ZPoly::from_i64s(&d)).ok()
        })
}

fn xy_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((0u32..4, 0u32..4, ratfunc()), 0..5)
        .prop_map(|terms| MPoly::from_terms(2, terms.into_iter().map(|(a, b, c)| (mono(&[a, b]), c))))
}

#[test]
fn ratfunc_cases() {
    let d = rf(&[4, 0, -1], &[1]);
    assert!((&d.inv().unwrap() * &d).is_one());
    let h = rf(&[0, 1], &[8, 0, -2]);
    assert_eq!(&h + &h, rf(&[0, 1], &[4, 0, -1]));
    assert_eq!((&h + &h).canonical_string(), "-t/(t^2 - 4)");
    assert_eq!(RatFunc::zero().canonical_string(), "0/1");
    assert_eq!(RatFunc::from_int(0).inv(), Err(AlgebraError::DivisionByZero));
}

#[test]
fn polynomial_cases() {
    let f = poly(&XY, "x^4 + y^4 + t*x^2*y^2");
    assert_eq!(f.sub(&poly(&XY, "x^4 + y^4")), poly(&XY, "t*x^2*y^2"));
    assert_eq!(f.partial(Var::X(0)).unwrap(), poly(&XY, "4*x^3 + 2*t*x*y^2"));
    assert_eq!(f.partial(Var::T).unwrap(), poly(&XY, "x^2*y^2"));
    assert!(poly(&XY, "7 - t").derivative(0).unwrap().is_zero());
    assert!(matches!(
        f.derivative(2),
        Err(AlgebraError::BadVariable { index: 2, nvars: 2 })
    ));
}

#[test]
fn specialization_cases() {
    let f = poly(&XY, "x^4 + y^4 + t*x^2*y^2");
    assert_eq!(
        f.specialize(&q(1, 1)).unwrap().to_ratfunc(),
        poly(&XY, "x^4 + y^4 + x^2*y^2")
    );
    let g = poly(&XY, "x/(4 - t^2)");
    assert!(matches!(g.specialize(&q(2, 1)), Err(AlgebraError::Pole { .. })));
    assert!(poly(&XY, "t*x").specialize(&q(0, 1)).unwrap().is_zero());
}

#[test]
fn weighted_degree_cases() {
    let w = [q(1, 4), q(1, 4)];
    assert_eq!(weighted_degree(&mono(&[1, 1]), &w), q(1, 2));
    assert_eq!(weighted_degree(&mono(&[0, 0]), &w), q(0, 1));
    assert_eq!(weighted_degree(&mono(&[2, 2]), &w), q(1, 1));
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn ratfunc_field_laws(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn ratfunc_canonical_form_is_idempotent(a in ratfunc(), k in prop::collection::vec(-3i64..=3, 1..3)) {
        let again = RatFunc::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(again.numer(), a.numer());
        prop_assert_eq!(again.denom(), a.denom());
        let k = ZPoly::from_i64s(&k);
        prop_assume!(!k.is_zero());
        let scaled = RatFunc::new(a.numer().mul(&k), a.denom().mul(&k)).unwrap();
        prop_assert_eq!(scaled.canonical_string(), a.canonical_string());
    }

    #[test]
    fn derivative_is_a_derivation(a in ratfunc(), b in ratfunc()) {
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialize_is_a_ring_homomorphism(p in xy_poly(), r in xy_poly(), t0 in -5i64..=5) {
        let t0 = q(t0, 1);
        let (Ok(ps), Ok(rs)) = (p.specialize(&t0), r.specialize(&t0)) else {
            return Ok(());
        };
        prop_assert_eq!(p.mul(&r).specialize(&t0).unwrap(), ps.mul(&rs));
        prop_assert_eq!(p.add(&r).specialize(&t0).unwrap(), ps.add(&rs));
    }

    #[test]
    fn partial_derivatives_commute(p in xy_poly()) {
        let dx = |p: &MPoly| p.partial(Var::X(0)).unwrap();
        let dy = |p: &MPoly| p.partial(Var::X(1)).unwrap();
        let dt = |p: &MPoly| p.partial(Var::T).unwrap();
        prop_assert_eq!(dy(&dx(&p)), dx(&dy(&p)));
        prop_assert_eq!(dt(&dx(&p)), dx(&dt(&p)));
        prop_assert_eq!(dt(&dy(&p)), dy(&dt(&p)));
    }
}
