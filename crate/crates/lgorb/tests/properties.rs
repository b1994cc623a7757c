//! Randomized structural properties of the sector algebras, exercised on
//! arbitrary elements rather than just the basis generators.

use lgorb::model::{preset, Model};
use lgorb::orbifold::{TwistedAlgebra, TwistedElement};
use lgorb::poly::MultiPoly;
use lgorb::scalar::CycScalar;
use proptest::prelude::*;
use std::sync::OnceLock;

fn fermat() -> &'static TwistedAlgebra {
    static MODEL: OnceLock<Model> = OnceLock::new();
    &MODEL
        .get_or_init(|| Model::build(&preset("fermat33").unwrap(), false).unwrap())
        .algebra
}

fn cubic() -> &'static TwistedAlgebra {
    static MODEL: OnceLock<Model> = OnceLock::new();
    &MODEL
        .get_or_init(|| Model::build(&preset("x3_z3").unwrap(), false).unwrap())
        .algebra
}

/// A random homogeneous element: one sector, a random staircase polynomial.
fn arb_element(
    alg: &'static TwistedAlgebra,
    omega: bool,
) -> impl Strategy<Value = (usize, TwistedElement)> {
    let order = alg.order();
    (0..order).prop_flat_map(move |sector| {
        let dim = alg.milnor(sector).dim();
        proptest::collection::vec((-2i64..=2, 0i64..3), dim).prop_map(move |picks| {
            let field = alg.field();
            let mut poly = MultiPoly::zero(alg.nvars(), field);
            for (m, (c, zp)) in alg.milnor(sector).basis().iter().zip(&picks) {
                let coeff = &CycScalar::from_int(field, *c) * &CycScalar::zeta_pow(field, *zp);
                let term = MultiPoly::from_terms(alg.nvars(), field, [(m.clone(), coeff)]);
                poly = poly.add(&term);
            }
            (sector, alg.class_element(sector, &poly, omega))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cup_is_braided_super_commutative(
        (gs, a) in arb_element(fermat(), false),
        (hs, b) in arb_element(fermat(), false),
    ) {
        let alg = fermat();
        let lhs = alg.cup(&a, &b).unwrap();
        let h_inv = alg.group()[hs].inverse();
        let mut rhs = alg.cup(&b, &alg.g_act(&h_inv, &a).unwrap()).unwrap();
        if alg.part_parity(gs, false) & alg.part_parity(hs, false) == 1 {
            rhs = rhs.neg();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_is_bilinear(
        (_, a) in arb_element(fermat(), false),
        (_, b) in arb_element(fermat(), false),
        (_, c) in arb_element(fermat(), false),
    ) {
        let alg = fermat();
        if let Ok(ab) = a.add(&b) {
            let lhs = alg.cup(&ab, &c).unwrap();
            let rhs = alg.cup(&a, &c).unwrap().add(&alg.cup(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cup_is_associative_on_random_elements(
        (_, a) in arb_element(cubic(), false),
        (_, b) in arb_element(cubic(), false),
        (_, c) in arb_element(cubic(), false),
    ) {
        let alg = cubic();
        let lhs = alg.cup(&alg.cup(&a, &b).unwrap(), &c).unwrap();
        let rhs = alg.cup(&a, &alg.cup(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cap_is_module_associative(
        (_, w) in arb_element(cubic(), true),
        (_, a) in arb_element(cubic(), false),
        (_, b) in arb_element(cubic(), false),
    ) {
        let alg = cubic();
        let lhs = alg.cap(&alg.cap(&w, &a).unwrap(), &b).unwrap();
        let rhs = alg.cap(&w, &alg.cup(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_acts_by_algebra_maps(
        hs in 0usize..9,
        (_, a) in arb_element(fermat(), false),
        (_, b) in arb_element(fermat(), false),
    ) {
        let alg = fermat();
        let h = &alg.group()[hs % alg.order()];
        let lhs = alg.g_act(h, &alg.cup(&a, &b).unwrap()).unwrap();
        let rhs = alg
            .cup(&alg.g_act(h, &a).unwrap(), &alg.g_act(h, &b).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_acts_trivially_on_both_parts(
        (_, a) in arb_element(fermat(), false),
        (_, w) in arb_element(fermat(), true),
    ) {
        let alg = fermat();
        prop_assert_eq!(alg.cup(&alg.unit(), &a).unwrap(), a.clone());
        prop_assert_eq!(alg.cup(&a, &alg.unit()).unwrap(), a);
        prop_assert_eq!(alg.cap(&w, &alg.unit()).unwrap(), w);
    }

    #[test]
    fn scaling_commutes_with_cup(
        (_, a) in arb_element(cubic(), false),
        (_, b) in arb_element(cubic(), false),
        c in -2i64..=2,
        zp in 0i64..3,
    ) {
        let alg = cubic();
        let s = &CycScalar::from_int(alg.field(), c) * &CycScalar::zeta_pow(alg.field(), zp);
        let lhs = alg.cup(&a.scale(&s), &b).unwrap();
        let rhs = alg.cup(&a, &b.scale(&s)).unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert_eq!(lhs, alg.cup(&a, &b).unwrap().scale(&s));
    }
}
