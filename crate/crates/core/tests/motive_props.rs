use proptest::prelude::*;
use tdn_core::genfunc::poincare;
use tdn_core::motive::{
    blowup, ds_ranks, fiber_product_ranks, fm_ranks, tdn_ranks, tvn_ranks, CellularSpace,
    LefschetzPoly,
};

fn lp(c: &[u64]) -> LefschetzPoly {
    LefschetzPoly::from_u64s(c.iter().copied())
}

#[test]
fn tdn_matches_poincare() {
    for d in 1..=3 {
        for n in 2..=8 {
            assert_eq!(
                tdn_ranks(d, n as usize).unwrap().to_qpoly(),
                poincare(d, n).unwrap(),
                "d={d} n={n}"
            );
        }
    }
}

#[test]
fn fm_small_cases_match_direct_blowups() {
    let p1 = CellularSpace::projective(1);
    let p2 = CellularSpace::projective(2);
    let cube = lp(&[1, 3, 3, 1]);
    assert_eq!(
        fm_ranks(&p1, 3).unwrap(),
        blowup(&cube, &lp(&[1, 1]), 2).unwrap()
    );
    let square = &lp(&[1, 1, 1]) * &lp(&[1, 1, 1]);
    assert_eq!(
        fm_ranks(&p2, 2).unwrap(),
        blowup(&square, &lp(&[1, 1, 1]), 2).unwrap()
    );
    assert_eq!(fm_ranks(&p1, 3).unwrap().total_rank(), 10u32.into());
    assert_eq!(fm_ranks(&p2, 2).unwrap().total_rank(), 12u32.into());
}

#[test]
fn top_boundary_divisor_is_a_product() {
    for name in ["P1", "P2", "P1xP1", "P3"] {
        let x = CellularSpace::from_catalog(name).unwrap();
        let d = x.dimension() as u32;
        for n in 2..=5 {
            assert_eq!(
                ds_ranks(&x, n, n).unwrap(),
                x.poly() * &tdn_ranks(d, n).unwrap()
            );
        }
    }
}

fn space() -> impl Strategy<Value = CellularSpace> {
    prop::collection::vec(1usize..4, 1..3)
        .prop_map(|dims| CellularSpace::product_of_projective(&dims).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fm_ranks_are_palindromic(x in space(), n in 1usize..5) {
        let r = fm_ranks(&x, n).unwrap();
        prop_assert!(r.is_palindromic());
        prop_assert_eq!(r.degree(), Some(n * x.dimension()));
    }

    #[test]
    fn relative_tower_factorizes(base in prop::collection::vec(1u64..4, 1..4), d in 1u32..4, n in 2usize..6) {
        let base = LefschetzPoly::from_u64s(base);
        prop_assert_eq!(tvn_ranks(&base, d, n).unwrap(), &base * &tdn_ranks(d, n).unwrap());
    }

    #[test]
    fn fiber_product_divides_exactly(
        base in prop::collection::vec(1u64..4, 1..3),
        a in prop::collection::vec(0u64..4, 1..4),
        b in prop::collection::vec(0u64..4, 1..4),
    ) {
        let base = LefschetzPoly::from_u64s(base);
        let a = &base * &LefschetzPoly::from_u64s(a);
        let b = &base * &LefschetzPoly::from_u64s(b);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let out = fiber_product_ranks(&base, &a, &b).unwrap();
        prop_assert_eq!(&out * &base, &a * &b);
    }
}
