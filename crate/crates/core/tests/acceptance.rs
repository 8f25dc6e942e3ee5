mod common;

use common::universal::{coequalizer_case, coproduct_case, equalizer_case, product_case, to_morphism, Outcome};
use common::{
    chain_bound, is_morphism, is_partial_action, morphism_table, morphisms, naive_free_reduce, normal_subgroups,
    partitions, pc_by_chains, Table,
};
use pact_core::algebra::{Elem, FiniteGroup};
use pact_core::congruence::{factor_through, induced_congruence, pc_check, quotient, Congruence};
use pact_core::fixtures::{oneobj_c2, p2, z2x};
use pact_core::functors::{eta, psi_object};
use pact_core::fwords::{has_p_property, is_loop, p_algorithm, pi_eval, product, FWord, PiValue};
use pact_core::groupoid::{groupoid_iso_check, Groupoid};
use pact_core::paction::{reduce, validate_morphism, validate_paction, PaMorphism, PartialAction};
use pact_core::reduced::{compare_reduced, induce_action, kernel_condition, FiniteQuotientHom, KernelOrder};
use pact_core::sample;
use pact_core::ugroup::{multiply, project};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

const ETA_GROUPOIDS: usize = 200;
const ETA_TIME_LIMIT: Duration = Duration::from_secs(60);
const NORMAL_FORM_WORDS: usize = 10_000;
const MINIMAL_PRODUCTS: usize = 1_000;
const P_RUNS: usize = 1_000;
const P_MAX_LEN: usize = 5;
const PC_INSTANCES: usize = 150;
const FACTOR_MORPHISMS: usize = 100;
const LIMIT_INSTANCES: usize = 40;
const COPRODUCT_WORD_CAP: usize = 4;
const REDUCTION_ACTIONS: usize = 50;

type Verdict = Result<String, String>;
type Case<'a> = (&'a str, &'a dyn Fn(&mut rand_chacha::ChaCha8Rng) -> Outcome);
type Triple = (String, String, String);
type Criterion = (&'static str, fn() -> Verdict);

fn fixture_groupoid(rng: &mut impl Rng) -> Groupoid {
    match rng.gen_range(0..3) {
        0 => p2(),
        1 => oneobj_c2(),
        _ => sample::groupoid(rng, 4),
    }
}

fn eta_is_iso() -> Verdict {
    let mut rng = sample::rng(1);
    let start = Instant::now();
    for i in 0..ETA_GROUPOIDS {
        let g = sample::groupoid(&mut rng, 5);
        let e = eta(&g).map_err(|e| format!("groupoid {i}: {e}"))?;
        if !groupoid_iso_check(&e.forward, &e.psi_phi.groupoid, &g) {
            return Err(format!("groupoid {i}: η is not an isomorphism"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > ETA_TIME_LIMIT {
        return Err(format!("{ETA_GROUPOIDS} groupoids took {elapsed:?}"));
    }
    Ok(format!("{ETA_GROUPOIDS} groupoids in {elapsed:.2?}"))
}

fn normal_forms_are_sound() -> Verdict {
    let mut rng = sample::rng(2);
    for i in 0..NORMAL_FORM_WORDS {
        let g = fixture_groupoid(&mut rng);
        let len = rng.gen_range(0..10);
        let w = sample::fword(&mut rng, &g, len);
        let cut = rng.gen_range(0..=w.0.len());
        let (left, right) = (FWord(w.0[..cut].to_vec()), FWord(w.0[cut..].to_vec()));
        let split = multiply(&g, &project(&g, &left), &project(&g, &right));
        if project(&g, &w) != split {
            return Err(format!("word {i}: bracketings disagree"));
        }
        if !project(&g, &w.mul(&w.inverse())).is_empty() {
            return Err(format!("word {i}: w·w⁻¹ does not vanish"));
        }
    }
    for i in 0..MINIMAL_PRODUCTS {
        let g = fixture_groupoid(&mut rng);
        let count = rng.gen_range(1..=4);
        let mut rep = Vec::new();
        while rep.len() < count {
            rep.extend(sample::minimal_elements(&mut rng, &g));
        }
        if !project(&g, &product(&rep)).is_empty() {
            return Err(format!("product {i} of minimal elements does not vanish"));
        }
    }
    Ok(format!("{NORMAL_FORM_WORDS} words, {MINIMAL_PRODUCTS} products of minimal elements"))
}

fn p_algorithm_is_correct() -> Verdict {
    let mut rng = sample::rng(3);
    let mut paths = 0;
    for i in 0..P_RUNS {
        let g = fixture_groupoid(&mut rng);
        let rep = sample::reduced_representation(&mut rng, &g, P_MAX_LEN);
        let flatten = |rep: &[pact_core::fwords::MinimalElement]| {
            naive_free_reduce(&FWord(rep.iter().flat_map(|e| e.element().0).collect()))
        };
        let input = flatten(&rep);
        let run = p_algorithm(&g, &rep).map_err(|e| format!("run {i}: {e}"))?;
        if flatten(&run.result) != input {
            return Err(format!("run {i}: output is a different element"));
        }
        if !has_p_property(&g, &run.result) {
            return Err(format!("run {i}: output lacks the P-property"));
        }
        if matches!(pi_eval(&g, &input), PiValue::Morphism(_)) {
            paths += 1;
            if !is_loop(&g, &input) {
                return Err(format!("run {i}: a path that is not a loop"));
            }
        }
    }
    Ok(format!("{P_RUNS} runs, {paths} with nonempty π"))
}

fn pc_matches_chains() -> Verdict {
    let mut rng = sample::rng(4);
    let mut instances = vec![z2x()];
    instances.extend((0..PC_INSTANCES).map(|_| sample::small_partial_action(&mut rng, 4)));
    let mut candidates = 0;
    for (i, theta) in instances.iter().enumerate() {
        let t = Table::of(theta);
        for labels in partitions(theta.len()) {
            for kernel in normal_subgroups(&t.group) {
                let c = Congruence::from_labels(&labels, kernel.clone());
                let found = pc_check(theta, &c).map_err(|e| format!("instance {i}: {e}"))?.holds;
                if found != pc_by_chains(&t, &labels, &kernel, chain_bound(&labels, &t.group, &kernel)) {
                    return Err(format!("instance {i}: disagreement on {labels:?} {kernel:?}"));
                }
                candidates += 1;
            }
        }
    }
    Ok(format!("{} instances, {candidates} candidates, 0 disagreements", instances.len()))
}

fn quotients_are_correct() -> Verdict {
    let mut rng = sample::rng(5);
    let mut quotients = 0;
    let mut factored = 0;
    while factored < FACTOR_MORPHISMS {
        let theta = sample::small_partial_action(&mut rng, 3);
        let rho = sample::small_partial_action(&mut rng, 3);
        if rho.is_empty() {
            continue;
        }
        let (t, r) = (Table::of(&theta), Table::of(&rho));
        let all = morphisms(&t, &r);
        let phi = to_morphism(all.choose(&mut rng).unwrap());
        let c = induced_congruence(&phi, &theta, &rho).map_err(|e| e.to_string())?;
        let (quot, pi) = quotient(&theta, &c).map_err(|e| format!("induced congruence rejected: {e}"))?;
        if !validate_paction(&quot).is_empty() || !validate_morphism(&pi, &theta, &quot).is_empty() {
            return Err("quotient fails validation".into());
        }
        let q = Table::of(&quot);
        let (f, h) = morphism_table(&pi, &theta, &quot);
        if !is_partial_action(&q) || !is_morphism(&f, &h, &t, &q) {
            return Err("quotient fails the axiom oracle".into());
        }
        quotients += 1;
        let (through, bar) = factor_through(&phi, &theta, &rho, &c).map_err(|e| e.to_string())?;
        if PaMorphism::compose(&bar, &pi, &theta, &through, &rho) != phi {
            return Err("factorization does not reproduce φ".into());
        }
        factored += 1;
    }
    Ok(format!("{quotients} quotients validated, {factored} morphisms factored"))
}

fn limits_are_universal() -> Verdict {
    let mut rng = sample::rng(6);
    let cases: [Case; 4] = [
        ("product", &|r| product_case(r)),
        ("equalizer", &|r| equalizer_case(r)),
        ("coproduct", &|r| coproduct_case(r, COPRODUCT_WORD_CAP)),
        ("coequalizer", &|r| coequalizer_case(r)),
    ];
    let mut summary = Vec::new();
    for (name, case) in cases {
        let mut checked = 0;
        while checked < LIMIT_INSTANCES {
            if case(&mut rng).map_err(|e| format!("{name}: {e}"))? {
                checked += 1;
            }
        }
        summary.push(format!("{name} {checked}"));
    }
    Ok(summary.join(", "))
}

fn pair_groupoid_quotients() -> Verdict {
    let g = p2();
    let (f, back) = (g.morphism_index("f").unwrap(), g.morphism_index("g").unwrap());
    let exponent = |m: usize| {
        if m == f {
            1
        } else if m == back {
            -1
        } else {
            0
        }
    };
    let quotients: Vec<FiniteQuotientHom> = (1..=8)
        .map(|n| FiniteQuotientHom::onto_cyclic(&g, n, exponent))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for (i, phi) in quotients.iter().enumerate() {
        let n = i + 1;
        if kernel_condition(&g, phi) == (n == 1) {
            return Err(format!("kernel condition wrong at n = {n}"));
        }
    }
    let phi = &quotients[1];
    let induced = induce_action(&g, phi).map_err(|e| e.to_string())?;
    let swap = PartialAction::global(&FiniteGroup::cyclic_named(2, "s"), vec!["a".into(), "b".into()], |s, x| {
        if s == 1 {
            1 - x
        } else {
            x
        }
    });
    let as_table = |theta: &PartialAction| Table::of(theta).maps;
    if !induced.is_global() || as_table(&induced.action) != as_table(&swap) {
        return Err("n = 2 is not the global swap".into());
    }
    let psi = psi_object(&induced.action);
    let expected: BTreeSet<(usize, Elem, usize)> =
        (0..g.morphism_count()).map(|m| (g.tgt(m), Elem::Finite(phi.images[m]), g.src(m))).collect();
    let found: BTreeSet<(usize, Elem, usize)> = psi.triples.iter().cloned().collect();
    if found != expected || found.len() != g.morphism_count() {
        return Err("(y, g, x) ↦ (y, φ(g), x) is not a bijection onto Ψ".into());
    }
    for (i, a) in quotients.iter().enumerate() {
        for (j, b) in quotients.iter().enumerate() {
            let (n, m) = (i + 1, j + 1);
            let expected = match (n % m == 0, m % n == 0) {
                (true, true) => KernelOrder::Equal,
                (true, false) => KernelOrder::Le,
                (false, true) => KernelOrder::Ge,
                (false, false) => KernelOrder::Incomparable,
            };
            if compare_reduced(a, b) != expected {
                return Err(format!("C{n} vs C{m}: expected {}", expected.symbol()));
            }
        }
    }
    Ok("C1..C8 kernel condition, C2 swap, divisibility order".into())
}

fn reduction_keeps_the_groupoid() -> Verdict {
    let mut rng = sample::rng(8);
    let named = |theta: &PartialAction| -> BTreeSet<Triple> {
        psi_object(theta)
            .triples
            .iter()
            .map(|(y, g, x)| (theta.point_name(*y).into(), theta.group().name(g), theta.point_name(*x).into()))
            .collect()
    };
    for i in 0..REDUCTION_ACTIONS {
        let theta = sample::small_partial_action(&mut rng, 5);
        let red = reduce(&theta).map_err(|e| format!("action {i}: {e}"))?;
        if named(&theta) != named(&red) {
            return Err(format!("action {i}: morphism sets differ"));
        }
    }
    Ok(format!("{REDUCTION_ACTIONS} actions"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("eta-iso", eta_is_iso),
        ("normal-form-soundness", normal_forms_are_sound),
        ("p-algorithm", p_algorithm_is_correct),
        ("pc-vs-chains", pc_matches_chains),
        ("quotients", quotients_are_correct),
        ("limits-universal", limits_are_universal),
        ("reduced-pair-groupoid", pair_groupoid_quotients),
        ("reduction-groupoid", reduction_keeps_the_groupoid),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
