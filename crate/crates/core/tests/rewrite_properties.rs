//! Properties of invariant rewriting on symmetrized random polynomials.

use proptest::prelude::*;
use ternary_invariants::rewrite::{
    aux_generator_fractions, orbit, quartic_aux_rewrite, rewrite_invariant, verify_rewrite_seeded,
    Poly, RationalExpr, Sym,
};

/// Quartic slice coordinates: `a_i` and `α_{i,j}` for `j = 1, 2, 3`.
fn quartic_symbol() -> impl Strategy<Value = Sym> {
    prop_oneof![
        (1u8..=3).prop_map(Sym::A),
        ((1u8..=3), (1u16..=3)).prop_map(|(i, j)| Sym::Alpha(i, j)),
    ]
}

/// The sum of the distinct signed images of a random monomial of total degree
/// at most `max_degree`.
fn invariant_polynomial(max_degree: i32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((quartic_symbol(), 1i32..=2), 1..=3).prop_filter_map(
        "bounded degree and nonzero",
        move |factors| {
            let degree: i32 = factors.iter().map(|(_, e)| e).sum();
            if degree > max_degree {
                return None;
            }
            let m = factors
                .iter()
                .fold(Poly::one(), |acc, (s, e)| acc.mul(&Poly::var_pow(*s, *e)));
            let sum = orbit(&m, 2)
                .unwrap()
                .iter()
                .fold(Poly::zero(), |acc, p| acc.add(p));
            (!sum.is_zero()).then_some(sum)
        },
    )
}

/// Whether `p` is a constant times a monomial in `It0` and `Il0`.
fn is_aux_denominator(p: &Poly) -> bool {
    p.as_monomial().is_some_and(|(m, _)| {
        m.iter()
            .all(|(s, e)| matches!(s, Sym::It0 | Sym::Il0) && *e > 0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minimal_rewrites_terminate_and_verify(p in invariant_polynomial(6), seed in any::<u64>()) {
        let e = RationalExpr::from_poly(p);
        let r = rewrite_invariant(&e, 2).unwrap();
        prop_assert!(r.rule_applications <= 10_000, "{} rule applications", r.rule_applications);
        prop_assert!(r.expr.symbols().iter().all(|s| !s.is_coordinate()));
        prop_assert!(verify_rewrite_seeded(&e, &r.expr, 2, 10, seed));
    }

    // Products of several `s` coordinates swell quickly in the auxiliary
    // system (each brings `It0⁻²`), so inputs stay at degree ≤ 4 here.
    #[test]
    fn aux_rewrites_keep_denominator_discipline(p in invariant_polynomial(4), seed in any::<u64>()) {
        let e = RationalExpr::from_poly(p);
        let r = quartic_aux_rewrite(&e).unwrap();
        prop_assert!(r.compact.denominator.as_constant().is_some() || is_aux_denominator(&r.compact.denominator),
            "denominator {}", r.compact.denominator);
        prop_assert!(verify_rewrite_seeded(&e, &r.expr, 2, 10, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn aux_generators_agree_with_their_minimal_rewrites(seed in any::<u64>()) {
        for (sym, num, den) in aux_generator_fractions() {
            let e = RationalExpr::new(num, den).unwrap();
            let minimal = rewrite_invariant(&e, 2).unwrap();
            prop_assert!(verify_rewrite_seeded(&e, &minimal.expr, 2, 5, seed), "{}", sym);
            let generator = RationalExpr::from_poly(Poly::var(sym));
            prop_assert!(verify_rewrite_seeded(&generator, &minimal.expr, 2, 5, seed), "{}", sym);
        }
    }
}

#[test]
fn sextic_and_octic_generators_rewrite_to_themselves() {
    use ternary_invariants::rewrite::minimal_generator_polys;
    for d in [3, 4] {
        for (sym, p) in minimal_generator_polys(d).unwrap() {
            let r = rewrite_invariant(&RationalExpr::from_poly(p), d).unwrap();
            assert_eq!(r.expr, RationalExpr::from_poly(Poly::var(sym)), "d = {d}");
        }
    }
}
