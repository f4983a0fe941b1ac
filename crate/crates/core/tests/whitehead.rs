mod common;

use common::*;
use fgcert::whitehead::{
    extends_to_basis, is_primitive, is_primitive_with_budget, minimize_tuple, type_one_generators,
    type_two_generators, whitehead_generators,
};
use fgcert::{Automorphism, Error, Word};
use proptest::prelude::*;

fn rank3() -> std::sync::Arc<fgcert::Alphabet> {
    alphabet("a,b,c")
}

/// Product of the chosen Whitehead generators, rightmost applied first.
fn automorphism(choices: &[usize]) -> Automorphism {
    let a = rank3();
    let moves = whitehead_generators(&a);
    choices
        .iter()
        .fold(Automorphism::identity(&a), |acc, &k| moves[k % moves.len()].compose(&acc).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn automorphisms_invert(choices in prop::collection::vec(0usize..1000, 0..6), w in words(&rank3(), 8)) {
        let phi = automorphism(&choices);
        prop_assert_eq!(phi.apply_inverse(&phi.apply(&w).unwrap()).unwrap(), w.clone());
        prop_assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
    }

    #[test]
    fn images_of_basis_letters_are_primitive(choices in prop::collection::vec(0usize..1000, 0..4), g in 0usize..3) {
        let phi = automorphism(&choices);
        let image = phi.apply(&rank3().generator(g)).unwrap();
        prop_assert!(is_primitive(&image).unwrap(), "{} not recognised", image);
    }

    #[test]
    fn primitivity_is_automorphism_invariant(choices in prop::collection::vec(0usize..1000, 0..3), w in nontrivial_words(&rank3(), 5)) {
        let phi = automorphism(&choices);
        prop_assert_eq!(is_primitive(&w).unwrap(), is_primitive(&phi.apply(&w).unwrap()).unwrap());
    }

    #[test]
    fn minimization_never_lengthens(t in prop::collection::vec(nontrivial_words(&rank3(), 6), 1..3)) {
        let (min, autos) = minimize_tuple(&t).unwrap();
        let total = |ws: &[Word]| ws.iter().map(Word::len).sum::<usize>();
        prop_assert!(total(&min) <= total(&t));
        let mut current = t.clone();
        for phi in &autos {
            current = current.iter().map(|w| phi.apply(w).unwrap()).collect();
        }
        prop_assert_eq!(current, min);
    }

    #[test]
    fn images_of_partial_bases_extend(choices in prop::collection::vec(0usize..1000, 0..4)) {
        let phi = automorphism(&choices);
        let a = rank3();
        let pair = [phi.apply(&a.generator(0)).unwrap(), phi.apply(&a.generator(2)).unwrap()];
        prop_assert!(extends_to_basis(&pair).unwrap());
    }
}

#[test]
fn generator_counts() {
    for (names, one, two) in [("a,b", 8, 12), ("a,b,c", 48, 90)] {
        let a = alphabet(names);
        assert_eq!(type_one_generators(&a).len(), one);
        assert_eq!(type_two_generators(&a).len(), two);
    }
}

#[test]
fn primitivity_examples() {
    let a = alphabet("a,b");
    let w = |s: &str| word(s, &a);
    assert!(is_primitive(&w("a^5 b")).unwrap());
    assert!(is_primitive(&w("a b a b^2")).unwrap());
    assert!(!is_primitive(&w("a^2 b^2")).unwrap());
    assert!(!is_primitive(&w("a b a^-1 b^-1")).unwrap());
    assert!(!is_primitive(&w("a^2")).unwrap());
    assert!(matches!(is_primitive(&w("1")), Err(Error::Degenerate(_))));
}

#[test]
fn exhausted_budget_is_reported() {
    let a = alphabet("a,b,c");
    let w = word("a b c a^-1 b^-1 c^-1", &a);
    assert!(matches!(is_primitive_with_budget(&w, 1), Err(Error::BudgetExhausted(1))));
}
