use cohen_core::group::{descend, is_member_h, lift_h};
use cohen_core::lcs::{lcs_quotient_basis, pairing_matrix_with};
use cohen_core::tensor::{check_lie_equals_gamma_cap_primitives, is_coalgebra_map};
use cohen_core::{AlgebraElement, Execution, FreeModule, GroupElement, LinearMapMatrix, RingSpec, Shape};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        Just(RingSpec::Z),
        Just(RingSpec::modular(9).unwrap()),
        Just(RingSpec::modular(2).unwrap())
    ]
}

fn letter(n: usize) -> impl Strategy<Value = String> {
    (1..=n, -4i64..=4).prop_map(|(i, r)| format!("x{i}^{r}"))
}

fn word(n: usize) -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        3 => letter(n),
        1 => proptest::collection::vec(letter(n), 2..=3).prop_map(|v| format!("[{}]", v.join(","))),
    ];
    proptest::collection::vec(atom, 1..=5).prop_map(|v| v.join(" "))
}

fn element(shape: Shape) -> impl Strategy<Value = AlgebraElement> {
    let n = shape.n as u8;
    let monomial = (Just((1..=n).collect::<Vec<u8>>()).prop_shuffle(), 0..=n as usize).prop_map(|(mut ix, len)| {
        ix.truncate(len);
        ix
    });
    proptest::collection::vec((monomial, -3i64..=3), 0..=4).prop_map(move |terms| {
        AlgebraElement::from_terms(shape, terms.into_iter().map(|(ix, c)| (ix, BigInt::from(c)))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canon_is_a_homomorphism(r in ring(), a in word(3), b in word(3)) {
        let shape = Shape::cohen(r, 3).unwrap();
        let ga = GroupElement::parse(shape, &a).unwrap();
        let gb = GroupElement::parse(shape, &b).unwrap();
        let prod = ga.mul(&gb).unwrap();
        prop_assert_eq!(prod.canon(), &ga.canon().mul(gb.canon()).unwrap());
        prop_assert!(ga.mul(&ga.inv()).unwrap().is_identity());
        let joined = GroupElement::parse(shape, &format!("{a} {b}")).unwrap();
        prop_assert_eq!(joined, prod);
    }

    #[test]
    fn projection_is_a_homomorphism(a in word(4), b in word(4), j in 1usize..=4) {
        let shape = Shape::cohen(RingSpec::Z, 4).unwrap();
        let ga = GroupElement::parse(shape, &a).unwrap();
        let gb = GroupElement::parse(shape, &b).unwrap();
        let lhs = ga.mul(&gb).unwrap().proj_p(j).unwrap();
        let rhs = ga.proj_p(j).unwrap().mul(&gb.proj_p(j).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ga.inject_s(j).unwrap().proj_p(j).unwrap(), ga.clone());
    }

    #[test]
    fn units_invert_and_positive_part_is_nilpotent(r in ring(), z in element(Shape::cohen(RingSpec::Z, 4).unwrap())) {
        let shape = Shape::cohen(r, 4).unwrap();
        let z = AlgebraElement::from_terms(shape, z.terms().map(|(m, c)| (m.indices().to_vec(), c.clone()))).unwrap();
        let positive = z.sub(&AlgebraElement::scalar(shape, z.augmentation().value().clone())).unwrap();
        prop_assert!(positive.pow(5).is_zero());
        let u = AlgebraElement::one(shape).add(&positive).unwrap();
        let v = u.unit_inverse().unwrap();
        prop_assert!(u.mul(&v).unwrap().is_one());
        prop_assert!(v.mul(&u).unwrap().is_one());
    }

    #[test]
    fn group_elements_are_coalgebra_maps(w in word(3)) {
        let shape = Shape::cohen(RingSpec::Z, 3).unwrap();
        let g = GroupElement::parse(shape, &w).unwrap();
        let module = FreeModule::new(RingSpec::Z, 2).unwrap();
        let check = is_coalgebra_map(g.canon(), module, 3, Execution::Sequential).unwrap();
        prop_assert!(check.holds(), "{:?}", check);
    }

    #[test]
    fn lifts_descend(n in 3usize..=4, a in -3i64..=3, b in -3i64..=3) {
        let shape = Shape::cohen(RingSpec::Z, 2).unwrap();
        let alpha = GroupElement::parse(shape, &format!("[x1^{a},x2^{b}]")).unwrap();
        let lifted = lift_h(&alpha, n).unwrap();
        prop_assert!(is_member_h(&lifted).unwrap().member);
        prop_assert_eq!(descend(&lifted, 2).unwrap(), alpha);
    }
}

#[test]
fn sequential_and_parallel_agree() {
    for (n, k, t) in [(4, 1, 3), (5, 1, 4), (4, 2, 2)] {
        let s = pairing_matrix_with(n, k, t, Execution::Sequential).unwrap();
        let p = pairing_matrix_with(n, k, t, Execution::Parallel).unwrap();
        assert_eq!(s, p);
        assert_eq!(s.rows(), lcs_quotient_basis(n, k, t).len());
    }
    let shape = Shape::cohen(RingSpec::Z, 3).unwrap();
    let g = GroupElement::parse(shape, "[x1,x2^2] x3^-1 [x2,x3,x1]").unwrap();
    let module = FreeModule::new(RingSpec::Z, 2).unwrap();
    let s = LinearMapMatrix::of_theta(g.canon(), module, 3, Execution::Sequential).unwrap();
    let p = LinearMapMatrix::of_theta(g.canon(), module, 3, Execution::Parallel).unwrap();
    assert_eq!(s, p);
    for n in 1..=4 {
        let s = check_lie_equals_gamma_cap_primitives(RingSpec::Z, n, Execution::Sequential).unwrap();
        let p = check_lie_equals_gamma_cap_primitives(RingSpec::Z, n, Execution::Parallel).unwrap();
        assert_eq!(s, p);
        assert!(s.equal);
    }
}

#[test]
fn block_group_torsion_and_vanishing() {
    let shape = Shape::new(RingSpec::modular(8).unwrap(), 4, 2).unwrap();
    let g = GroupElement::parse(shape, "{x1|x2}^3 {x3|x4}").unwrap();
    // u = g - 1 has u^3 = 0, and C(8, 2) = 28 is not 0 mod 8
    assert!(!g.pow(8).unwrap().is_identity());
    assert!(g.pow(16).unwrap().is_identity());
    assert!(GroupElement::parse(shape, "{x1|x2}^3")
        .unwrap()
        .pow(8)
        .unwrap()
        .is_identity());
    assert!(GroupElement::parse(shape, "{x1|x1}^5").unwrap().is_identity());
    assert!(GroupElement::parse(shape, "[{x1|x2},{x2|x3}]").unwrap().is_identity());
}
