//! Universal properties of the (co)limit constructions checked against enumerated hom-sets.
//!
//! Each check returns `Ok(false)` when the sampled instance is degenerate and was skipped.

use super::{compose_tables, functions, homs, morphism_table, morphisms, Table};
use pact_core::algebra::{Elem, FiniteGroup, GroupHom};
use pact_core::limits::{
    coequalizer, coequalizer_mediator, coproduct, coproduct_mediator, equalizer, equalizer_mediator, product,
    product_mediator,
};
use pact_core::paction::{validate_paction, PaMorphism, PartialAction};
use pact_core::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

pub type Arrow = (Vec<usize>, Vec<usize>);
pub type Outcome = Result<bool, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub fn to_morphism(a: &Arrow) -> PaMorphism {
    PaMorphism { phi0: a.0.clone(), phi1: GroupHom::Table(a.1.iter().map(|&i| Elem::Finite(i)).collect()) }
}

pub fn action_over(rng: &mut impl Rng, max_order: usize, max_points: usize) -> PartialAction {
    let groups: Vec<FiniteGroup> = sample::small_groups().into_iter().filter(|g| g.order() <= max_order).collect();
    let group = groups.choose(rng).unwrap().clone();
    sample::partial_action(rng, &group, max_points)
}

/// Precomposition or postcomposition with a fixed arrow must biject the two enumerated sets.
fn bijection(from: &[Arrow], to: &[Arrow], f: impl Fn(&Arrow) -> Arrow) -> Result<(), String> {
    let images: BTreeSet<Arrow> = from.iter().map(f).collect();
    ensure!(images.len() == from.len(), "comparison map is not injective");
    ensure!(images == to.iter().cloned().collect::<BTreeSet<_>>(), "comparison map is not surjective");
    Ok(())
}

pub fn product_case(rng: &mut impl Rng) -> Outcome {
    let a = action_over(rng, 2, 2);
    let b = action_over(rng, 2, 2);
    let sigma = action_over(rng, 4, 3);
    let p = product(&[&a, &b]).map_err(|e| e.to_string())?;
    let (ta, tb, ts, tp) = (Table::of(&a), Table::of(&b), Table::of(&sigma), Table::of(&p.action));
    let pi: Vec<Arrow> = p.projections.iter().zip([&a, &b]).map(|(m, t)| morphism_table(m, &p.action, t)).collect();
    let (ca, cb) = (morphisms(&ts, &ta), morphisms(&ts, &tb));
    let cones: Vec<Arrow> = ca
        .iter()
        .flat_map(|x| {
            cb.iter().map(move |y| ([x.0.clone(), y.0.clone()].concat(), [x.1.clone(), y.1.clone()].concat()))
        })
        .collect();
    bijection(&morphisms(&ts, &tp), &cones, |m| {
        let (x, y) = (compose_tables(&pi[0], m), compose_tables(&pi[1], m));
        ([x.0, y.0].concat(), [x.1, y.1].concat())
    })?;
    for x in ca.iter().take(4) {
        for y in cb.iter().take(4) {
            let m = product_mediator(&sigma, &[to_morphism(x), to_morphism(y)], &[&a, &b], &p)
                .map_err(|e| e.to_string())?;
            let m = morphism_table(&m, &sigma, &p.action);
            ensure!(&compose_tables(&pi[0], &m) == x && &compose_tables(&pi[1], &m) == y, "mediator misses the cone");
        }
    }
    Ok(true)
}

pub fn equalizer_case(rng: &mut impl Rng) -> Outcome {
    let theta = action_over(rng, 4, 4);
    let rho = action_over(rng, 4, 3);
    if rho.is_empty() {
        return Ok(false);
    }
    let sigma = action_over(rng, 4, 3);
    let (tt, tr, ts) = (Table::of(&theta), Table::of(&rho), Table::of(&sigma));
    let parallel = morphisms(&tt, &tr);
    let phi = parallel.choose(rng).unwrap().clone();
    let psi = parallel.choose(rng).unwrap().clone();
    let e = equalizer(&to_morphism(&phi), &to_morphism(&psi), &theta, &rho).map_err(|e| e.to_string())?;
    let iota = morphism_table(&e.inclusion, &e.action, &theta);
    let forks: Vec<Arrow> =
        morphisms(&ts, &tt).into_iter().filter(|k| compose_tables(&phi, k) == compose_tables(&psi, k)).collect();
    bijection(&morphisms(&ts, &Table::of(&e.action)), &forks, |m| compose_tables(&iota, m))?;
    for k in forks.iter().take(6) {
        let m = equalizer_mediator(&sigma, &to_morphism(k), &theta, &e).map_err(|e| e.to_string())?;
        ensure!(&compose_tables(&iota, &morphism_table(&m, &sigma, &e.action)) == k, "mediator misses the fork");
    }
    Ok(true)
}

/// Morphisms out of the coproduct are enumerated by a homomorphism per factor and a carrier map,
/// checked on every group word of length at most `max_word`.
pub fn coproduct_case(rng: &mut impl Rng, max_word: usize) -> Outcome {
    let a = action_over(rng, 4, 2);
    let b = action_over(rng, 4, 2);
    let sigma = action_over(rng, 4, 3);
    if sigma.is_empty() {
        return Ok(false);
    }
    let co = coproduct(&[&a, &b]).map_err(|e| e.to_string())?;
    let (ta, tb, ts) = (Table::of(&a), Table::of(&b), Table::of(&sigma));
    let words = super::words_up_to(co.action.group(), max_word);
    let gs = sigma.group().finite().unwrap();
    let (fa, fb) = (a.group().finite().unwrap(), b.group().finite().unwrap());
    let mut out_of = Vec::new();
    for ha in homs(fa, gs) {
        for hb in homs(fb, gs) {
            let phi1 = GroupHom::PerFactor(vec![
                ha.iter().map(|&i| Elem::Finite(i)).collect(),
                hb.iter().map(|&i| Elem::Finite(i)).collect(),
            ]);
            for f in functions(co.action.len(), sigma.len()) {
                let ok = words.iter().all(|w| {
                    let image = phi1.apply(sigma.group(), w);
                    (0..co.action.len()).all(|x| match co.action.apply(w, x) {
                        None => true,
                        Some(y) => sigma.apply(&image, f[x]) == Some(f[y]),
                    })
                });
                if ok {
                    out_of.push((f, ha.clone(), hb.clone()));
                }
            }
        }
    }
    let legs: Vec<&Vec<usize>> = co.injections.iter().map(|j| &j.phi0).collect();
    let cocones: BTreeSet<(Arrow, Arrow)> = morphisms(&ta, &ts)
        .into_iter()
        .flat_map(|x| morphisms(&tb, &ts).into_iter().map(move |y| (x.clone(), y)))
        .collect();
    let restricted: BTreeSet<(Arrow, Arrow)> = out_of
        .iter()
        .map(|(f, ha, hb)| {
            let x = (legs[0].iter().map(|&p| f[p]).collect(), ha.clone());
            let y = (legs[1].iter().map(|&p| f[p]).collect(), hb.clone());
            (x, y)
        })
        .collect();
    ensure!(restricted.len() == out_of.len(), "restriction to the injections is not injective");
    ensure!(restricted == cocones, "restriction to the injections is not surjective");
    for (x, y) in cocones.iter().take(6) {
        let m =
            coproduct_mediator(&sigma, &[to_morphism(x), to_morphism(y)], &[&a, &b], &co).map_err(|e| e.to_string())?;
        for (j, leg) in co.injections.iter().zip([x, y]) {
            ensure!(j.phi0.iter().map(|&p| m.phi0[p]).collect::<Vec<_>>() == leg.0, "mediator misses a leg");
        }
        for w in &words {
            let Elem::Free(syllables) = w else { unreachable!() };
            let by_legs = syllables
                .iter()
                .fold(gs.identity(), |acc, s| gs.mul(acc, if s.factor == 0 { x.1[s.elem] } else { y.1[s.elem] }));
            ensure!(m.phi1.apply(sigma.group(), w) == Elem::Finite(by_legs), "mediator group part disagrees on {w:?}");
        }
    }
    Ok(true)
}

pub fn coequalizer_case(rng: &mut impl Rng) -> Outcome {
    let theta = action_over(rng, 4, 3);
    let rho = action_over(rng, 4, 4);
    let sigma = action_over(rng, 4, 3);
    if rho.is_empty() || sigma.is_empty() {
        return Ok(false);
    }
    let (tt, tr, ts) = (Table::of(&theta), Table::of(&rho), Table::of(&sigma));
    let parallel = morphisms(&tt, &tr);
    let phi = parallel.choose(rng).unwrap().clone();
    let psi = parallel.choose(rng).unwrap().clone();
    let co = coequalizer(&to_morphism(&phi), &to_morphism(&psi), &theta, &rho).map_err(|e| e.to_string())?;
    ensure!(validate_paction(&co.action).is_empty(), "coequalizer is not a partial action");
    let pi = morphism_table(&co.projection, &rho, &co.action);
    let cocones: Vec<Arrow> =
        morphisms(&tr, &ts).into_iter().filter(|c| compose_tables(c, &phi) == compose_tables(c, &psi)).collect();
    bijection(&morphisms(&Table::of(&co.action), &ts), &cocones, |m| compose_tables(m, &pi))?;
    for c in cocones.iter().take(6) {
        let m = coequalizer_mediator(&sigma, &to_morphism(c), &rho, &co).map_err(|e| e.to_string())?;
        ensure!(&compose_tables(&morphism_table(&m, &co.action, &sigma), &pi) == c, "mediator misses the cocone");
    }
    Ok(true)
}
