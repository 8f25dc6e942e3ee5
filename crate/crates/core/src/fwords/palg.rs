use super::minimal::{classify_pair, is_reduced, product, reduce_representation, switch, MinimalElement, PairKind};
use super::{is_loop, pi_eval, FWord, PiValue};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

const STEP_LIMIT: usize = 100_000;

/// Output of the rewriting to P-property form, with every intermediate representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PRun {
    pub result: Vec<MinimalElement>,
    pub trace: Vec<Vec<MinimalElement>>,
}

/// Every adjacent pair is a P-pair.
pub fn has_p_property(g: &Groupoid, rep: &[MinimalElement]) -> bool {
    rep.windows(2).all(|p| classify_pair(g, &p[0], &p[1]) == Ok(PairKind::P))
}

fn first_c_pair(g: &Groupoid, rep: &[MinimalElement]) -> Result<Option<usize>> {
    for i in 0..rep.len().saturating_sub(1) {
        if classify_pair(g, &rep[i], &rep[i + 1])? == PairKind::C {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Rewrites a reduced representation into one with the P-property.
///
/// The tail is processed first: each new head is prepended to the finished suffix,
/// the result is re-reduced, and C-pairs are switched from the left until none remain.
/// Whenever reduction shortens the sequence, the shortened sequence is fed back in.
pub fn p_algorithm(g: &Groupoid, rep: &[MinimalElement]) -> Result<PRun> {
    if !is_reduced(g, rep) {
        return Err(Error::NotReduced("representation cancels or merges".into()));
    }
    let target = product(rep);
    if target.is_empty() {
        return Err(Error::RepresentsIdentity);
    }
    let mut trace = vec![rep.to_vec()];
    let mut pending: Vec<MinimalElement> = rep.to_vec();
    let mut done: Vec<MinimalElement> = Vec::new();
    let mut steps = 0;
    while let Some(head) = pending.pop() {
        let joined: Vec<MinimalElement> = std::iter::once(head).chain(done.iter().cloned()).collect();
        let mut current = reduce_representation(g, &joined);
        loop {
            steps += 1;
            if steps > STEP_LIMIT {
                return Err(Error::NoConvergence(STEP_LIMIT));
            }
            if current.len() < joined.len() {
                break;
            }
            let Some(i) = first_c_pair(g, &current)? else { break };
            let (left, right) = switch(g, &current[i], &current[i + 1])?;
            current[i] = left;
            current[i + 1] = right;
            let before = current.len();
            current = reduce_representation(g, &current);
            let snapshot: Vec<MinimalElement> = pending.iter().cloned().chain(current.iter().cloned()).collect();
            trace.push(snapshot);
            if current.len() < before {
                break;
            }
        }
        if current.len() < joined.len() || !has_p_property(g, &current) {
            pending.extend(current);
            done.clear();
        } else {
            done = current;
        }
    }
    debug_assert_eq!(product(&done), target);
    if trace.last() != Some(&done) {
        trace.push(done.clone());
    }
    Ok(PRun { result: done, trace })
}

/// Outcome of checking that an element of the normal subgroup with a non-empty value is a loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopCheck {
    pub word: FWord,
    pub value: PiValue,
    pub is_loop: bool,
    /// `None` when the representation multiplies to the identity.
    pub run: Option<PRun>,
    pub holds: bool,
}

pub fn loop_check_theorem(g: &Groupoid, rep: &[MinimalElement]) -> Result<LoopCheck> {
    let reduced = reduce_representation(g, rep);
    let word = product(rep);
    let value = pi_eval(g, &word);
    let looped = is_loop(g, &word);
    let run = if reduced.is_empty() { None } else { Some(p_algorithm(g, &reduced)?) };
    let run_ok = run
        .as_ref()
        .is_none_or(|r| product(&r.result) == word && has_p_property(g, &r.result) && is_reduced(g, &r.result));
    let holds = run_ok && (word.is_empty() || value == PiValue::Empty || looped);
    Ok(LoopCheck { word, value, is_loop: looped, run, holds })
}

#[cfg(test)]
mod tests {
    use super::super::tests::p2;
    use super::super::Letter;
    use super::*;

    fn w(letters: &[(usize, bool)]) -> FWord {
        FWord(letters.iter().map(|&(m, i)| Letter::new(m, i)).collect())
    }

    #[test]
    fn trivial_inputs_are_fixed() {
        let (g, f, h) = p2();
        let xi = MinimalElement::new(w(&[(f, false)]), w(&[(f, false), (h, false)]));
        let run = p_algorithm(&g, std::slice::from_ref(&xi)).unwrap();
        assert_eq!(run.result, vec![xi.clone()]);
        assert_eq!(p_algorithm(&g, &[]), Err(Error::RepresentsIdentity));
    }

    #[test]
    fn c_pair_is_switched_once() {
        let (g, f, h) = p2();
        let xi = MinimalElement::new(w(&[(f, false)]), w(&[(f, false), (h, false)]));
        let phi = MinimalElement::new(FWord::default(), w(&[(h, true), (f, true)]));
        let run = p_algorithm(&g, &[xi.clone(), phi.clone()]).unwrap();
        let (a, b) = switch(&g, &xi, &phi).unwrap();
        assert_eq!(run.result, vec![a, b]);
        assert!(has_p_property(&g, &run.result));
        assert_eq!(product(&run.result), product(&[xi, phi]));
    }

    #[test]
    fn rejects_unreduced() {
        let (g, f, h) = p2();
        let xi = MinimalElement::new(w(&[(f, false)]), w(&[(f, false), (h, false)]));
        assert!(matches!(p_algorithm(&g, &[xi.clone(), xi.inverse()]), Err(Error::NotReduced(_))));
    }

    #[test]
    fn loop_check_on_single_element() {
        let (g, f, h) = p2();
        let phi = MinimalElement::new(FWord::default(), w(&[(h, false), (f, false)]));
        let check = loop_check_theorem(&g, &[phi]).unwrap();
        assert!(check.is_loop && check.holds);
        let xi = MinimalElement::new(w(&[(f, false)]), w(&[(f, false), (h, false)]));
        let check = loop_check_theorem(&g, &[xi]).unwrap();
        assert_eq!(check.value, PiValue::Empty);
        assert!(check.holds);
    }
}
