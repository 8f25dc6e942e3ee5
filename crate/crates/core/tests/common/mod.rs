//! Brute-force oracles shared by the integration suites.
#![allow(dead_code)]

pub mod universal;

use pact_core::algebra::{Elem, FiniteGroup, Group};
use pact_core::fwords::{FWord, Letter};
use pact_core::paction::{PaMorphism, PartialAction};
use std::collections::{BTreeSet, HashSet};

/// A partial action over a finite-table group flattened into `maps[g][x]`.
pub struct Table {
    pub group: FiniteGroup,
    pub n: usize,
    pub maps: Vec<Vec<Option<usize>>>,
}

impl Table {
    pub fn of(theta: &PartialAction) -> Table {
        let group = theta.group().finite().expect("finite-table group").clone();
        let n = theta.len();
        let maps = group.elements().map(|g| (0..n).map(|x| theta.apply(&Elem::Finite(g), x)).collect()).collect();
        Table { group, n, maps }
    }

    pub fn image(&self, g: usize) -> BTreeSet<usize> {
        self.maps[g].iter().flatten().copied().collect()
    }

    pub fn domain(&self, g: usize) -> BTreeSet<usize> {
        (0..self.n).filter(|&x| self.maps[g][x].is_some()).collect()
    }
}

/// The partial action axioms read off literally.
pub fn is_partial_action(t: &Table) -> bool {
    let e = t.group.identity();
    if (0..t.n).any(|x| t.maps[e][x] != Some(x)) {
        return false;
    }
    for g in t.group.elements() {
        if t.image(g).len() != t.domain(g).len() || t.domain(g) != t.image(t.group.inv(g)) {
            return false;
        }
        for h in t.group.elements() {
            for x in 0..t.n {
                if let Some(z) = t.maps[h][x].and_then(|y| t.maps[g][y]) {
                    if t.maps[t.group.mul(g, h)][x] != Some(z) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Free reduction by repeatedly deleting the leftmost cancelling pair.
pub fn naive_free_reduce(w: &FWord) -> FWord {
    let mut letters: Vec<Letter> = w.0.clone();
    while let Some(i) = (0..letters.len().saturating_sub(1))
        .find(|&i| letters[i].morphism == letters[i + 1].morphism && letters[i].inverse != letters[i + 1].inverse)
    {
        letters.drain(i..i + 2);
    }
    FWord(letters)
}

/// Labelings in restricted-growth form, one per partition of `0..n`.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for label in 0..=next {
            prefix.push(label);
            extend(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), n, &mut out);
    out
}

/// Subsets closed under products and conjugation.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<BTreeSet<usize>> {
    let n = g.order();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| {
            s.contains(&g.identity())
                && s.iter().all(|&a| s.iter().all(|&b| s.contains(&g.mul(a, b))))
                && s.iter().all(|&k| g.elements().all(|x| s.contains(&g.mul(g.mul(x, k), g.inv(x)))))
        })
        .collect()
}

/// (PC) decided on every chain of length at most `bound`.
///
/// Chains are grown one link at a time; two chains with the same target, source and `ε`
/// extend identically, so each layer keeps one representative per such triple.
pub fn pc_by_chains(t: &Table, labels: &[usize], kernel: &BTreeSet<usize>, bound: usize) -> bool {
    let g = &t.group;
    let coset = |a: usize| -> BTreeSet<usize> { kernel.iter().map(|&k| g.mul(a, k)).collect() };
    let links: Vec<(usize, usize, usize)> =
        g.elements().flat_map(|h| (0..t.n).filter_map(move |x| Some((x, h, t.maps[t.group.inv(h)][x]?)))).collect();
    let mut seen: HashSet<(usize, usize, usize)> = links.iter().map(|&(x, h, s)| (x, s, h)).collect();
    let mut layer: Vec<(usize, usize, usize)> = seen.iter().copied().collect();
    for _ in 1..bound {
        let mut next = Vec::new();
        for &(target, source, eps) in &layer {
            for &(x, h, s) in &links {
                if labels[source] == labels[x] {
                    let state = (target, s, g.mul(eps, h));
                    if seen.insert(state) {
                        next.push(state);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let states: Vec<_> = seen.into_iter().collect();
    states.iter().all(|&(t1, s1, e1)| {
        states
            .iter()
            .all(|&(t2, s2, e2)| coset(e1) != coset(e2) || ((labels[s1] == labels[s2]) == (labels[t1] == labels[t2])))
    })
}

/// `|X/R| · |G/K| + 1`.
pub fn chain_bound(labels: &[usize], group: &FiniteGroup, kernel: &BTreeSet<usize>) -> usize {
    let blocks = labels.iter().collect::<BTreeSet<_>>().len();
    blocks * (group.order() / kernel.len()) + 1
}

/// Every multiplication-preserving map between finite groups, as an image table.
pub fn homs(from: &FiniteGroup, to: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = from.order();
    let mut out = Vec::new();
    let mut table = vec![0; n];
    loop {
        if from.elements().all(|a| from.elements().all(|b| table[from.mul(a, b)] == to.mul(table[a], table[b]))) {
            out.push(table.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            table[i] += 1;
            if table[i] < to.order() {
                break;
            }
            table[i] = 0;
            i += 1;
        }
    }
}

/// Every map `0..n → 0..m`.
pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|f: Vec<usize>| (0..m).map(move |y| [f.clone(), vec![y]].concat())).collect();
    }
    out
}

/// Domain condition and equivariance checked point by point.
pub fn is_morphism(phi0: &[usize], phi1: &[usize], theta: &Table, rho: &Table) -> bool {
    theta.group.elements().all(|g| {
        (0..theta.n).all(|x| match theta.maps[g][x] {
            None => true,
            Some(y) => rho.maps[phi1[g]][phi0[x]] == Some(phi0[y]),
        })
    })
}

/// Every morphism between partial actions over finite-table groups.
pub fn morphisms(theta: &Table, rho: &Table) -> Vec<(Vec<usize>, Vec<usize>)> {
    let hs = homs(&theta.group, &rho.group);
    let fs = functions(theta.n, rho.n);
    let mut out = Vec::new();
    for h in &hs {
        for f in &fs {
            if is_morphism(f, h, theta, rho) {
                out.push((f.clone(), h.clone()));
            }
        }
    }
    out
}

/// Elements of a group given by words of length at most `max_len` over its generators.
pub fn words_up_to(group: &Group, max_len: usize) -> Vec<Elem> {
    let gens = group.generators();
    let mut out = vec![group.identity()];
    let mut layer = vec![group.identity()];
    for _ in 0..max_len {
        let next: Vec<Elem> = layer.iter().flat_map(|w| gens.iter().map(move |g| group.mul(w, g))).collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn rng_from(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// A morphism between finite-table partial actions as `(φ_0, φ_1)` index tables.
pub fn morphism_table(phi: &PaMorphism, theta: &PartialAction, rho: &PartialAction) -> (Vec<usize>, Vec<usize>) {
    let group = theta.group().finite().expect("finite-table group");
    let images = group
        .elements()
        .map(|g| match phi.phi1.apply(rho.group(), &Elem::Finite(g)) {
            Elem::Finite(i) => i,
            other => panic!("{other:?} is not a finite-table element"),
        })
        .collect();
    (phi.phi0.clone(), images)
}

/// `outer ∘ inner` on index tables.
pub fn compose_tables(outer: &(Vec<usize>, Vec<usize>), inner: &(Vec<usize>, Vec<usize>)) -> (Vec<usize>, Vec<usize>) {
    (inner.0.iter().map(|&x| outer.0[x]).collect(), inner.1.iter().map(|&g| outer.1[g]).collect())
}
