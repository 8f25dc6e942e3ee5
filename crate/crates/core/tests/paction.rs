mod common;

use common::{homs, is_morphism, is_partial_action, morphism_table, rng_from, Table};
use pact_core::algebra::{Elem, GroupHom};
use pact_core::functors::psi_object;
use pact_core::paction::{is_reduced, reduce, validate_morphism, validate_paction, PaMorphism, PartialAction};
use pact_core::sample;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

/// Arbitrary partial maps, most of which break some axiom.
fn raw_action(rng: &mut impl Rng) -> PartialAction {
    let groups = sample::small_groups();
    let group = groups.choose(rng).unwrap().clone();
    let n = rng.gen_range(0..=3);
    let mut theta = PartialAction::new(group.clone(), (0..n).map(|i| format!("p{i}")).collect());
    for g in group.elements().filter(|&g| g != group.identity()) {
        let mut pairs = Vec::new();
        for x in 0..n {
            if rng.gen_bool(0.5) {
                pairs.push((x, rng.gen_range(0..n)));
            }
        }
        theta.set_map(Elem::Finite(g), pairs);
    }
    theta
}

fn triples(theta: &PartialAction) -> BTreeSet<(String, String, String)> {
    let group = theta.group();
    psi_object(theta)
        .triples
        .iter()
        .map(|(y, g, x)| (theta.point_name(*y).to_string(), group.name(g), theta.point_name(*x).to_string()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn validation_matches_axioms(seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let theta = if rng.gen_bool(0.5) { raw_action(&mut rng) } else { sample::small_partial_action(&mut rng, 4) };
        prop_assert_eq!(validate_paction(&theta).is_empty(), is_partial_action(&Table::of(&theta)));
    }

    #[test]
    fn morphism_validation_matches_definition(seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let theta = sample::small_partial_action(&mut rng, 3);
        let rho = sample::small_partial_action(&mut rng, 3);
        prop_assume!(!rho.is_empty());
        let (t, r) = (Table::of(&theta), Table::of(&rho));
        let hs = homs(&t.group, &r.group);
        let h = hs.choose(&mut rng).unwrap().clone();
        let f: Vec<usize> = (0..theta.len()).map(|_| rng.gen_range(0..rho.len())).collect();
        let phi = PaMorphism { phi0: f.clone(), phi1: GroupHom::Table(h.iter().map(|&i| Elem::Finite(i)).collect()) };
        prop_assert_eq!(validate_morphism(&phi, &theta, &rho).is_empty(), is_morphism(&f, &h, &t, &r));
        prop_assert_eq!(morphism_table(&phi, &theta, &rho), (f, h));
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let theta = sample::small_partial_action(&mut rng_from(seed), 5);
        let back = PartialAction::from_doc(&theta.to_doc()).unwrap();
        prop_assert_eq!(back.to_doc(), theta.to_doc());
        prop_assert!(validate_paction(&back).is_empty());
    }

    #[test]
    fn reduction_keeps_the_groupoid(seed in any::<u64>()) {
        let theta = sample::small_partial_action(&mut rng_from(seed), 5);
        let red = reduce(&theta).unwrap();
        prop_assert!(validate_paction(&red).is_empty());
        prop_assert!(is_reduced(&red).unwrap());
        prop_assert_eq!(triples(&theta), triples(&red));
    }
}
