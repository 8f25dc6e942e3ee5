//! Seeded random instances for property suites.

use crate::algebra::FiniteGroup;
use crate::fwords::{minimal_decompose, pi_eval, reduce_representation, FWord, Letter, MinimalElement, PiValue};
use crate::groupoid::Groupoid;
use crate::paction::PartialAction;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub const DEFAULT_SEED: u64 = 0x5_eed0_f9a7;

/// `PACT_SEED` if set and numeric, otherwise [`DEFAULT_SEED`].
pub fn seed() -> u64 {
    std::env::var("PACT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// An independent stream per suite, derived from [`seed`].
pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// Groups of order at most 4.
pub fn small_groups() -> Vec<FiniteGroup> {
    let c2 = FiniteGroup::cyclic(2);
    vec![
        FiniteGroup::trivial(),
        c2.clone(),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::direct_product(&[&c2, &c2]),
    ]
}

/// A groupoid on at most `max_objects` objects, each component connected with isotropy of order
/// at most 4, with objects and morphisms shuffled.
pub fn groupoid(rng: &mut impl Rng, max_objects: usize) -> Groupoid {
    let n = rng.gen_range(1..=max_objects);
    let groups = small_groups();
    let mut parts = Vec::new();
    let mut next = 0;
    while next < n {
        let size = rng.gen_range(1..=n - next);
        let names: Vec<String> = (next..next + size).map(|i| format!("o{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let isotropy = groups.choose(rng).expect("nonempty");
        parts.push(Groupoid::connected(&refs, isotropy));
        next += size;
    }
    let joined = Groupoid::disjoint_union(&parts);
    let mut objects: Vec<usize> = (0..joined.object_count()).collect();
    let mut morphisms: Vec<usize> = (0..joined.morphism_count()).collect();
    objects.shuffle(rng);
    morphisms.shuffle(rng);
    joined.permuted(&objects, &morphisms)
}

/// A restriction of `group` acting globally on a union of coset spaces.
pub fn partial_action(rng: &mut impl Rng, group: &FiniteGroup, max_points: usize) -> PartialAction {
    let subgroups = group.subgroups();
    let mut orbits: Vec<(BTreeSet<usize>, Vec<BTreeSet<usize>>)> = Vec::new();
    let mut total = 0;
    loop {
        let h = subgroups.choose(rng).expect("the trivial subgroup exists").clone();
        let cosets: BTreeSet<BTreeSet<usize>> =
            group.elements().map(|g| h.iter().map(|&k| group.mul(g, k)).collect()).collect();
        if total + cosets.len() > max_points {
            if total > 0 {
                break;
            }
            continue;
        }
        total += cosets.len();
        orbits.push((h, cosets.into_iter().collect()));
        if rng.gen_bool(0.5) {
            break;
        }
    }
    let points: Vec<(usize, &BTreeSet<usize>)> =
        orbits.iter().enumerate().flat_map(|(i, (_, cs))| cs.iter().map(move |c| (i, c))).collect();
    let names = (0..points.len()).map(|i| format!("p{i}")).collect();
    let global = PartialAction::global(group, names, |g, x| {
        let (orbit, coset) = points[x];
        let image: BTreeSet<usize> = coset.iter().map(|&c| group.mul(g, c)).collect();
        points.iter().position(|&(o, c)| o == orbit && *c == image).expect("cosets are permuted")
    });
    let keep: BTreeSet<usize> = (0..points.len()).filter(|_| rng.gen_bool(0.7)).collect();
    global.restrict(&keep)
}

/// A partial action over a random group of order at most 4.
pub fn small_partial_action(rng: &mut impl Rng, max_points: usize) -> PartialAction {
    let groups = small_groups();
    let group = groups.choose(rng).expect("nonempty");
    partial_action(rng, group, max_points)
}

/// A uniformly random word of length `len`, not necessarily reduced.
pub fn fword(rng: &mut impl Rng, g: &Groupoid, len: usize) -> FWord {
    FWord((0..len).map(|_| Letter::new(rng.gen_range(0..g.morphism_count()), rng.gen_bool(0.5))).collect())
}

/// A reduced loop: a random path closed off by the inverse of its value.
pub fn loop_word(rng: &mut impl Rng, g: &Groupoid, max_len: usize) -> FWord {
    loop {
        let len = rng.gen_range(1..=max_len);
        let w = fword(rng, g, len);
        let closed = match pi_eval(g, &w) {
            PiValue::Morphism(m) if !g.is_identity(m) => w.mul(&FWord(vec![Letter::new(m, true)])),
            PiValue::Morphism(_) | PiValue::IdentityMap => w.reduced(),
            PiValue::Empty => continue,
        };
        if !closed.is_empty() {
            return closed;
        }
    }
}

/// The minimal elements of `z u z⁻¹` for random `z` and loop `u`.
pub fn minimal_elements(rng: &mut impl Rng, g: &Groupoid) -> Vec<MinimalElement> {
    let len = rng.gen_range(0..=3);
    let z = fword(rng, g, len).reduced();
    let u = loop_word(rng, g, 3);
    minimal_decompose(g, &z, &u).expect("loop words decompose")
}

/// A reduced minimal representation of at most `max_len` elements, not representing the identity.
pub fn reduced_representation(rng: &mut impl Rng, g: &Groupoid, max_len: usize) -> Vec<MinimalElement> {
    loop {
        let mut pool = Vec::new();
        while pool.len() < max_len {
            pool.extend(minimal_elements(rng, g));
        }
        pool.shuffle(rng);
        let take = rng.gen_range(1..=max_len);
        let chosen: Vec<MinimalElement> =
            pool.into_iter().take(take).map(|e| if rng.gen_bool(0.5) { e.inverse() } else { e }).collect();
        let rep = reduce_representation(g, &chosen);
        if !rep.is_empty() {
            return rep;
        }
    }
}
