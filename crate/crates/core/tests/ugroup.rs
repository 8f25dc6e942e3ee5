mod common;

use common::rng_from;
use pact_core::fixtures::{oneobj_c2, p2};
use pact_core::fwords::{product, FWord};
use pact_core::groupoid::Groupoid;
use pact_core::sample;
use pact_core::ugroup::{
    enumerate_normal_forms, finite_elements, invert, is_normal_form, multiply, presentation_check, project, UWord,
};
use proptest::prelude::*;
use rand::Rng;

fn fixture(rng: &mut impl Rng) -> Groupoid {
    match rng.gen_range(0..3) {
        0 => p2(),
        1 => oneobj_c2(),
        _ => sample::groupoid(rng, 4),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn projection_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let g = fixture(&mut rng);
        let words: Vec<FWord> = (0..3).map(|_| { let n = rng.gen_range(0..6); sample::fword(&mut rng, &g, n) }).collect();
        let left = multiply(&g, &multiply(&g, &project(&g, &words[0]), &project(&g, &words[1])), &project(&g, &words[2]));
        let right = multiply(&g, &project(&g, &words[0]), &multiply(&g, &project(&g, &words[1]), &project(&g, &words[2])));
        prop_assert_eq!(&left, &right);
        prop_assert!(is_normal_form(&g, &left));
        let w = &words[0];
        prop_assert!(project(&g, &w.mul(&w.inverse())).is_empty());
        prop_assert_eq!(invert(&g, &project(&g, w)), project(&g, &w.inverse()));
    }

    #[test]
    fn generators_of_the_normal_subgroup_vanish(seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let g = fixture(&mut rng);
        let rep = sample::reduced_representation(&mut rng, &g, 4);
        prop_assert!(project(&g, &product(&rep)).is_empty());
    }

    #[test]
    fn presentations_hold(seed in any::<u64>()) {
        let g = sample::groupoid(&mut rng_from(seed), 5);
        prop_assert!(presentation_check(&g).is_empty());
    }
}

#[test]
fn normal_forms_are_fixed_by_projection() {
    let g = p2();
    for w in enumerate_normal_forms(&g, 4) {
        let letters = FWord(w.0.iter().map(|&m| pact_core::fwords::Letter::new(m, false)).collect());
        assert_eq!(project(&g, &letters), w);
    }
}

#[test]
fn one_object_group_is_recovered() {
    let g = oneobj_c2();
    let elements = finite_elements(&g).unwrap();
    assert_eq!(elements.len(), 2);
    let s = elements.iter().find(|w| !w.is_empty()).unwrap();
    assert_eq!(multiply(&g, s, s), UWord::default());
    assert!(finite_elements(&p2()).is_none());
}
