//! Algebraic laws of `[0, 1]` with the MV operations and scalar action, and
//! the logical axioms as valid formulas.

mod common;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use riesz_core::geometry::{is_valid, unit_norm};
use riesz_core::kernel::{mv_dist, mv_join, mv_meet, mv_neg, mv_odot, mv_oplus, scalar_mul};
use riesz_core::{Budget, Formula, Rational, UnitRational};

fn unit_strategy() -> impl Strategy<Value = UnitRational> {
    (1i64..=48).prop_flat_map(|d| (0..=d).prop_map(move |k| UnitRational::ratio(k, d)))
}

fn le(x: &UnitRational, y: &UnitRational) -> bool {
    mv_odot(x, &mv_neg(y)).is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig { rng_seed: RngSeed::Fixed(1), ..ProptestConfig::with_cases(512) })]

    #[test]
    fn order_is_the_numeric_order(x in unit_strategy(), y in unit_strategy()) {
        prop_assert_eq!(le(&x, &y), x.value() <= y.value());
        prop_assert_eq!(mv_join(&x, &y).into_inner(), x.value().clone().max(y.value().clone()));
        prop_assert_eq!(mv_meet(&x, &y).into_inner(), x.value().clone().min(y.value().clone()));
    }

    #[test]
    fn distance_laws(x in unit_strategy(), y in unit_strategy(), z in unit_strategy()) {
        prop_assert_eq!(mv_dist(&x, &y), mv_dist(&y, &x));
        prop_assert_eq!(mv_dist(&x, &y).is_zero(), x == y);
        prop_assert!(le(&mv_dist(&x, &z), &mv_oplus(&mv_dist(&x, &y), &mv_dist(&y, &z))));
    }

    #[test]
    fn scalar_action_properties(r in unit_strategy(), q in unit_strategy(), x in unit_strategy(), y in unit_strategy()) {
        let zero = UnitRational::zero();
        prop_assert!(scalar_mul(&zero, &x).is_zero());
        prop_assert!(scalar_mul(&r, &zero).is_zero());
        if le(&x, &y) {
            prop_assert!(le(&scalar_mul(&r, &x), &scalar_mul(&r, &y)));
        }
        if r.value() <= q.value() {
            prop_assert!(le(&scalar_mul(&r, &x), &scalar_mul(&q, &x)));
        }
        prop_assert!(le(&scalar_mul(&r, &x), &x));
    }

    #[test]
    fn truncation_facts(a in -40i64..40, b in -40i64..40, d in 1i64..12) {
        let (x, y) = (Rational::new(a, d), Rational::new(b, d));
        let zero = Rational::zero();
        let pos = |v: &Rational| v.clone().max(Rational::zero());
        prop_assert!(pos(&x) + pos(&y) >= pos(&(&x + &y)));
        prop_assert_eq!(x >= zero, oracle::sharp(&-&x).is_zero());
        prop_assert_eq!(oracle::sharp(&x), oracle::sharp(&pos(&x)));
    }
}

/// The scalar axioms as formulas; each instance must be provable, which by
/// completeness means valid.
#[test]
fn scalar_axiom_instances_are_valid() {
    let mut rng = rng(11);
    let budget = Budget::default();
    for i in 0..120 {
        let shape = FormulaShape { vars: 2, depth: 2, scalars: i % 2 == 0 };
        let (phi, psi) = (formula(&mut rng, shape), formula(&mut rng, shape));
        let (r, q) = (unit(&mut rng, 6), unit(&mut rng, 6));
        let rq = UnitRational::new(r.value() * q.value()).unwrap();
        let r_minus_q = mv_odot(&r, &mv_neg(&q));
        let nab = |s: &UnitRational, f: &Formula| Formula::nabla(s.clone(), f);
        let instances = [
            nab(&r, &phi.implies(&psi)).iff(&nab(&r, &phi).implies(&nab(&r, &psi))),
            nab(&r_minus_q, &phi).iff(&nab(&q, &phi).implies(&nab(&r, &phi))),
            nab(&r, &nab(&q, &phi)).iff(&nab(&rq, &phi)),
            nab(&UnitRational::one(), &phi).iff(&phi),
        ];
        for (k, axiom) in instances.iter().enumerate() {
            assert!(is_valid(axiom, &budget).unwrap(), "axiom {} instance {axiom}", k + 1);
        }
    }
}

#[test]
fn lukasiewicz_axiom_instances_are_valid() {
    let mut rng = rng(12);
    for _ in 0..100 {
        let f = tautology(&mut rng, 2, 1);
        assert!(is_valid(&f, &Budget::default()).unwrap(), "{f}");
    }
}

#[test]
fn seminorm_properties() {
    let mut rng = rng(13);
    let budget = Budget::default();
    let norm = |f: &Formula| unit_norm(f, &budget).unwrap().into_inner();
    assert!(norm(&Formula::falsum()).is_zero());
    assert!(norm(&Formula::verum()).is_one());
    for _ in 0..60 {
        let shape = FormulaShape { vars: 2, depth: 3, scalars: true };
        let (x, y) = (formula(&mut rng, shape), formula(&mut rng, shape));
        let r = unit(&mut rng, 8);
        assert!(norm(&x.oplus(&y)) <= norm(&x) + norm(&y), "subadditivity for {x}, {y}");
        assert_eq!(norm(&x.meet(&y)).max(norm(&x)), norm(&x), "monotonicity for {x}, {y}");
        assert_eq!(norm(&Formula::delta(r.clone(), &x)), r.value() * &norm(&x), "homogeneity for {x}");
    }
}
