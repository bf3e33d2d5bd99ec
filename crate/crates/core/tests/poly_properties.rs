//! Properties of exact ternary forms.

use num_traits::Zero;
use proptest::prelude::*;
use ternary_invariants::poly::{int, monomial_exponents};
use ternary_invariants::{SignedPermutation, TernaryForm};

fn form_strategy(n: u32) -> impl Strategy<Value = TernaryForm> {
    let exps = monomial_exponents(n);
    prop::collection::vec(-6i64..=6, exps.len()).prop_map(move |cs| {
        TernaryForm::from_terms(n, exps.iter().zip(cs).map(|(e, c)| (*e, int(c)))).unwrap()
    })
}

fn even_degree() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(4), Just(6), Just(8)]
}

fn group_element() -> impl Strategy<Value = SignedPermutation> {
    (0..48usize).prop_map(|k| SignedPermutation::all()[k])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn action_composes_over_the_whole_group(v in (1u32..=6).prop_flat_map(form_strategy)) {
        let group = SignedPermutation::all();
        for g1 in &group {
            for g2 in &group {
                let twice = v.act_unchecked(&g2.matrix()).act_unchecked(&g1.matrix());
                // g1·(g2·v)(X) = (g2·v)(g1ᵀX) = v(g2ᵀ g1ᵀ X) = ((g1 g2)·v)(X).
                let product = g1.matrix().matmul(&g2.matrix());
                prop_assert_eq!(&twice, &v.act_unchecked(&product));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apolar_product_is_invariant(
        (v, w) in even_degree().prop_flat_map(|n| (form_strategy(n), form_strategy(n))),
        g in group_element(),
    ) {
        let m = g.matrix();
        let lhs = v.act_unchecked(&m).apolar(&w.act_unchecked(&m)).unwrap();
        prop_assert_eq!(lhs, v.apolar(&w).unwrap());
    }

    #[test]
    fn multiplication_by_q_is_adjoint_to_the_laplacian(
        (v, w) in (1u32..=4).prop_flat_map(|d| (form_strategy(2 * d), form_strategy(2 * d - 2))),
    ) {
        let qw = TernaryForm::q().mul(&w);
        prop_assert_eq!(v.apolar(&qw).unwrap(), v.laplacian().unwrap().apolar(&w).unwrap());
    }

    #[test]
    fn harmonic_means_orthogonal_to_q_multiples(v in (1u32..=4).prop_flat_map(|d| form_strategy(2 * d))) {
        let n = v.degree();
        let harmonic = v.laplacian().unwrap().is_zero();
        let orthogonal = monomial_exponents(n - 2).iter().all(|e| {
            let w = TernaryForm::monomial(e[0], e[1], e[2], int(1));
            v.apolar(&TernaryForm::q().mul(&w)).unwrap().is_zero()
        });
        prop_assert_eq!(harmonic, orthogonal);
    }
}

#[test]
fn harmonic_forms_are_orthogonal_to_q_multiples() {
    // A harmonic sextic: the equivalence above is vacuous on random forms.
    let v = TernaryForm::parse("6 y^5 z - 20 y^3 z^3 + 6 y z^5").unwrap();
    assert!(v.laplacian().unwrap().is_zero());
    for e in monomial_exponents(4).iter() {
        let w = TernaryForm::monomial(e[0], e[1], e[2], int(1));
        assert!(v.apolar(&TernaryForm::q().mul(&w)).unwrap().is_zero());
    }
}
