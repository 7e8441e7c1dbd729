mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use ratcrit::criterion::lemmas::check_additivity;
use ratcrit::criterion::profile::power_coefficients;
use ratcrit::criterion::{family, hankel_rank_profile, windowed_profile, CORPUS};
use ratcrit::fredholm::defect_matrix;
use ratcrit::freegroup::{equivariance_failure_set, invert, multiply, pi, pi_inverse, reduce, EdgeOrStar, ReducedWord};
use ratcrit::rational::{compile, expand_exact, format_expression, parse, solve_truncated, RationalExpression};
use ratcrit::{Element, GeneratorSet, StarConvention};

fn letters(rank: i32, len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..=rank).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]), 0..len)
}

fn word(rank: i32, len: usize) -> impl Strategy<Value = ReducedWord> {
    letters(rank, len).prop_map(|l| reduce(&l))
}

fn seeded() -> impl Strategy<Value = StdRng> {
    any::<u64>().prop_map(StdRng::seed_from_u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_idempotent_and_cancels(l in letters(3, 12)) {
        let w = reduce(&l);
        prop_assert_eq!(reduce(w.letters()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != -p[1]));
        prop_assert!(multiply(&w, &invert(&w)).is_identity());
    }

    #[test]
    fn group_is_associative(u in word(3, 8), v in word(3, 8), w in word(3, 8)) {
        prop_assert_eq!(multiply(&multiply(&u, &v), &w), multiply(&u, &multiply(&v, &w)));
        prop_assert_eq!(invert(&multiply(&u, &v)), multiply(&invert(&v), &invert(&u)));
    }

    #[test]
    fn pi_is_a_bijection(g in word(3, 10)) {
        let e = pi(&g);
        prop_assert_eq!(pi_inverse(&e), g.clone());
        prop_assert_eq!(matches!(e, EdgeOrStar::Star), g.is_identity());
        prop_assert_eq!(e.radius(), g.len());
    }

    #[test]
    fn pi_is_equivariant_off_the_failure_set(g in word(2, 5), h in word(2, 8)) {
        let failures = equivariance_failure_set(&g);
        prop_assert_eq!(failures.len(), g.len() + 1);
        if !failures.contains(&h) {
            let shifted = match pi(&h) {
                EdgeOrStar::Edge(e) => pi_inverse(&EdgeOrStar::Edge(ratcrit::freegroup::Edge::new(multiply(&g, &e.base), e.gen))),
                EdgeOrStar::Star => ReducedWord::identity(),
            };
            prop_assert_eq!(pi(&multiply(&g, &h)), pi(&shifted));
        }
    }

    #[test]
    fn ring_axioms(mut rng in seeded()) {
        let [a, b, c] = [0; 3].map(|_| common::element(&mut rng, 2, 2, 4));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).adjoint(), &b.adjoint() * &a.adjoint());
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        prop_assert_eq!((&a * &b).trace(), (&b * &a).trace());
        prop_assert_eq!(&a * &Element::one(), a.clone());
    }

    #[test]
    fn commutator_rank_is_bounded(g in word(2, 6)) {
        let gens = GeneratorSet::standard(2);
        let el = Element::word(g.clone());
        let d = defect_matrix(&gens, &el, &el, &Element::one(), &Element::one(), StarConvention::Zero).unwrap();
        prop_assert!(d.certified);
        prop_assert!(d.rank() <= g.len() + 1);
    }

    #[test]
    fn defects_add_over_common_denominators(mut rng in seeded()) {
        let gens = GeneratorSet::standard(2);
        let s = common::nonzero_element(&mut rng, 2, 1, 2);
        let t = common::nonzero_element(&mut rng, 2, 1, 2);
        let (m1, m2) = (common::element(&mut rng, 2, 1, 2), common::element(&mut rng, 2, 1, 2));
        let q1 = ratcrit::criterion::Quadruple::new(&s * &m1, &m1 * &t, s.clone(), t.clone()).unwrap();
        let q2 = ratcrit::criterion::Quadruple::new(&s * &m2, &m2 * &t, s, t).unwrap();
        for conv in [StarConvention::Zero, StarConvention::Strict, StarConvention::Unital] {
            prop_assert!(check_additivity(&gens, &q1, &q2, conv).unwrap());
        }
    }

    #[test]
    fn expressions_round_trip_through_text(mut rng in seeded(), depth in 0usize..4) {
        let gens = GeneratorSet::standard(2);
        let e = common::expandable_expression(&mut rng, 2, depth);
        let text = format_expression(&e, &gens);
        let back = parse(&text, &gens).unwrap();
        let again = format_expression(&back, &gens);
        prop_assert_eq!(format_expression(&parse(&again, &gens).unwrap(), &gens), again);
        prop_assert_eq!(expand_exact(&back, 3).unwrap().coefficients, expand_exact(&e, 3).unwrap().coefficients);
    }

    #[test]
    fn expansion_is_a_homomorphism(mut rng in seeded()) {
        let r = 4;
        let e1 = common::expandable_expression(&mut rng, 2, 2);
        let e2 = common::expandable_expression(&mut rng, 2, 2);
        let x1 = expand_exact(&e1, r).unwrap().coefficients;
        let x2 = expand_exact(&e2, r).unwrap().coefficients;
        let sum = RationalExpression::Add(Box::new(e1.clone()), Box::new(e2.clone()));
        let prod = RationalExpression::Mul(Box::new(e1), Box::new(e2));
        prop_assert_eq!(expand_exact(&sum, r).unwrap().coefficients, &x1 + &x2);
        prop_assert_eq!(expand_exact(&prod, r).unwrap().coefficients, x1.mul_truncated(&x2, r));
    }

    #[test]
    fn compiled_systems_agree_with_expansion(mut rng in seeded(), depth in 0usize..4) {
        let e = common::expandable_expression(&mut rng, 2, depth);
        prop_assert_eq!(solve_truncated(&compile(&e), 4).unwrap(), expand_exact(&e, 4).unwrap().coefficients);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn profiles_are_monotone(i in 0..CORPUS.len(), w in 2usize..7) {
        let gens = GeneratorSet::standard(1);
        let u = family(CORPUS[i], 1).unwrap();
        prop_assert!(windowed_profile(&gens, &u, w, w, StarConvention::Zero).unwrap().is_monotone());
        let h = hankel_rank_profile(&power_coefficients(&u, 1, 2 * w - 1).unwrap(), w).unwrap();
        prop_assert!(h.windows(2).all(|p| p[0] <= p[1]));
    }
}
