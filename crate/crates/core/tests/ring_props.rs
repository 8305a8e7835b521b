use num_rational::BigRational;
use proptest::prelude::*;
use tdn_core::chowring::{conjecture_check, pairing_table, Monomial};
use tdn_core::genfunc::betti_numbers;
use tdn_core::setcore::enumerate_nested_families;
use tdn_core::{Caps, CycleClass, RingPresentation, Subset};

fn ring(d: u32, n: u32) -> RingPresentation {
    RingPresentation::new(d, n, Caps::default()).unwrap()
}

#[test]
fn ranks_satisfy_duality_and_match_betti() {
    for (d, n) in [
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 2),
        (3, 3),
    ] {
        let p = ring(d, n);
        let ranks = p.ranks().unwrap();
        let top = p.top_degree();
        assert_eq!(ranks.len(), top + 1);
        assert_eq!((ranks[0], ranks[top]), (1, 1));
        for k in 0..=top {
            assert_eq!(ranks[k], ranks[top - k]);
        }
        let betti: Vec<usize> = betti_numbers(d, n)
            .unwrap()
            .iter()
            .map(|b| usize::try_from(b).unwrap())
            .collect();
        assert_eq!(ranks, betti, "(d,n)=({d},{n})");
        assert_eq!(p.rank(top + 1).unwrap(), 0);
    }
}

#[test]
fn top_intersection_sign() {
    for (d, n) in [
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 2),
        (3, 3),
    ] {
        let p = ring(d, n);
        let expected = if p.top_degree().is_multiple_of(2) {
            1
        } else {
            -1
        };
        assert_eq!(
            p.integrate(&p.point_class()).unwrap(),
            BigRational::from_integer(expected.into())
        );
    }
}

#[test]
fn singleton_conjecture_cases_agree_with_the_pairing_diagonal() {
    for (d, n) in [(1, 4), (2, 3), (2, 4)] {
        let p = ring(d, n);
        let table = pairing_table(&p).unwrap();
        assert!(table.matches_closed_form());
        for family in enumerate_nested_families(n, false, Some(1), &Caps::default()).unwrap() {
            let family = family.unwrap();
            let report = conjecture_check(&p, &family, None).unwrap();
            assert!(report.magnitude_ok);
            if let [s] = family.proper_sets() {
                let sign = if (d * (n - 1)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(
                    report.integral,
                    BigRational::from_integer(sign.into()),
                    "{s}"
                );
            }
        }
    }
}

fn var_strategy(p: &RingPresentation) -> impl Strategy<Value = Subset> {
    prop::sample::select(p.variables().to_vec())
}

fn top_monomial(p: &RingPresentation) -> impl Strategy<Value = Monomial> {
    let top = p.top_degree();
    prop::collection::vec(var_strategy(p), top).prop_map(|vars| {
        vars.into_iter()
            .fold(Monomial::one(), |m, v| m.times_var(v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integrate_is_linear(
        (a, b) in (top_monomial(&ring(1, 4)), top_monomial(&ring(1, 4))),
        x in -5i64..5,
        y in -5i64..5,
    ) {
        let p = ring(1, 4);
        let x = BigRational::from_integer(x.into());
        let y = BigRational::from_integer(y.into());
        let combo = CycleClass::from_terms([(a.clone(), x.clone())]).unwrap()
            .add(&CycleClass::from_terms([(b.clone(), y.clone())]).unwrap())
            .unwrap();
        let lhs = p.integrate(&combo).unwrap();
        let rhs = x * p.integrate_monomial(&a).unwrap() + y * p.integrate_monomial(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn non_nested_monomials_vanish(m in top_monomial(&ring(2, 3))) {
        let p = ring(2, 3);
        if !m.has_nested_support() {
            prop_assert!(p.is_zero(&CycleClass::from_monomial(m)).unwrap());
        }
    }

    #[test]
    fn normal_form_is_idempotent(m in top_monomial(&ring(1, 5))) {
        let p = ring(1, 5);
        let nf = p.normal_form(&CycleClass::from_monomial(m.clone())).unwrap();
        let again = p.normal_form(nf.class()).unwrap();
        prop_assert_eq!(nf.class(), again.class());
        prop_assert!(p.equivalent(&CycleClass::from_monomial(m), nf.class()).unwrap());
    }
}
