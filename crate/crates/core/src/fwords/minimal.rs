use super::{is_loop, path_decompose, pi_eval, Block, FWord, PiValue};
use crate::doc::MinimalElementDoc;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

/// A conjugate `z u z⁻¹` of a loop `u` by a loop-free conjugator unlinked to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalElement {
    pub conjugator: FWord,
    pub loop_word: FWord,
}

impl MinimalElement {
    pub fn new(conjugator: FWord, loop_word: FWord) -> Self {
        MinimalElement { conjugator: conjugator.reduced(), loop_word: loop_word.reduced() }
    }

    pub fn element(&self) -> FWord {
        FWord::concat(&[&self.conjugator, &self.loop_word, &self.conjugator.inverse()])
    }

    pub fn inverse(&self) -> Self {
        MinimalElement { conjugator: self.conjugator.clone(), loop_word: self.loop_word.inverse() }
    }

    /// The object the loop is based at.
    pub fn base(&self, g: &Groupoid) -> usize {
        match pi_eval(g, &self.loop_word) {
            PiValue::Morphism(m) => g.src(m),
            _ => panic!("loop word does not evaluate to a morphism"),
        }
    }

    /// Checks the defining conditions, describing the first failure.
    pub fn check(&self, g: &Groupoid) -> std::result::Result<(), String> {
        if !self.conjugator.is_reduced() || !self.loop_word.is_reduced() {
            return Err("words are not reduced".into());
        }
        if !is_loop(g, &self.loop_word) {
            return Err("the conjugated word is not a loop".into());
        }
        let blocks = path_decompose(g, &self.conjugator);
        if blocks.iter().any(|b| b.is_loop(g)) {
            return Err("the conjugator contains a loop".into());
        }
        if blocks.last().is_some_and(|b| b.source(g) == self.base(g)) {
            return Err("the conjugator is linked to the loop".into());
        }
        Ok(())
    }

    pub fn to_doc(&self, g: &Groupoid) -> MinimalElementDoc {
        MinimalElementDoc { conjugator: self.conjugator.to_doc(g), loop_word: self.loop_word.to_doc(g) }
    }

    pub fn from_doc(doc: &MinimalElementDoc, g: &Groupoid) -> Result<Self> {
        let e = MinimalElement::new(FWord::from_doc(&doc.conjugator, g)?, FWord::from_doc(&doc.loop_word, g)?);
        e.check(g).map_err(|why| Error::Malformed(format!("not a minimal element: {why}")))?;
        Ok(e)
    }
}

/// The free-group element represented by a sequence of minimal elements.
pub fn product(rep: &[MinimalElement]) -> FWord {
    rep.iter().fold(FWord::default(), |acc, e| acc.mul(&e.element()))
}

fn concat_blocks(blocks: &[Block]) -> FWord {
    FWord(blocks.iter().flat_map(|b| b.word.0.iter().copied()).collect()).reduced()
}

/// Writes the basic generator `z u z⁻¹` as a product of minimal elements by
/// repeatedly peeling off the first loop in the conjugator.
pub fn minimal_decompose(g: &Groupoid, z: &FWord, u: &FWord) -> Result<Vec<MinimalElement>> {
    if !is_loop(g, u) {
        return Err(Error::NotALoop);
    }
    let mut z = z.reduced();
    let mut u = u.reduced();
    let mut prefix = Vec::new();
    let mut suffix = Vec::new();
    loop {
        let blocks = path_decompose(g, &z);
        let base = MinimalElement { conjugator: FWord::default(), loop_word: u.clone() }.base(g);
        if let Some(last) = blocks.last().filter(|b| b.source(g) == base) {
            // The last block is linked to the loop: absorb it into the loop.
            u = FWord::concat(&[&last.word, &u, &last.word.inverse()]);
            z = concat_blocks(&blocks[..blocks.len() - 1]);
            continue;
        }
        match blocks.iter().position(|b| b.is_loop(g)) {
            None => {
                prefix.push(MinimalElement { conjugator: z, loop_word: u });
                break;
            }
            Some(r) => {
                let peeled =
                    MinimalElement { conjugator: concat_blocks(&blocks[..r]), loop_word: blocks[r].word.clone() };
                suffix.push(peeled.inverse());
                prefix.push(peeled);
                let rest: Vec<Block> = blocks[..r].iter().chain(&blocks[r + 1..]).cloned().collect();
                z = concat_blocks(&rest);
            }
        }
    }
    prefix.extend(suffix.into_iter().rev());
    Ok(prefix)
}

fn linked_loops(g: &Groupoid, a: &MinimalElement, b: &MinimalElement) -> bool {
    a.base(g) == b.base(g)
}

fn cancelling_infix(rep: &[MinimalElement]) -> Option<(usize, usize)> {
    for i in 0..rep.len() {
        let mut acc = FWord::default();
        for (j, e) in rep.iter().enumerate().skip(i) {
            acc = acc.mul(&e.element());
            if acc.is_empty() {
                return Some((i, j));
            }
        }
    }
    None
}

fn mergeable_pair(g: &Groupoid, rep: &[MinimalElement]) -> Option<usize> {
    (0..rep.len().saturating_sub(1))
        .find(|&i| rep[i].conjugator == rep[i + 1].conjugator && linked_loops(g, &rep[i], &rep[i + 1]))
}

/// No infix multiplies to the identity and no neighbours share a conjugator with linked loops.
pub fn is_reduced(g: &Groupoid, rep: &[MinimalElement]) -> bool {
    cancelling_infix(rep).is_none() && mergeable_pair(g, rep).is_none()
}

/// Erases cancelling infixes, then merges neighbouring loops under a common conjugator, to a fixpoint.
pub fn reduce_representation(g: &Groupoid, rep: &[MinimalElement]) -> Vec<MinimalElement> {
    let mut rep = rep.to_vec();
    loop {
        if let Some((i, j)) = cancelling_infix(&rep) {
            rep.drain(i..=j);
            continue;
        }
        if let Some(i) = mergeable_pair(g, &rep) {
            let merged = MinimalElement {
                conjugator: rep[i].conjugator.clone(),
                loop_word: rep[i].loop_word.mul(&rep[i + 1].loop_word),
            };
            rep.splice(i..=i + 1, [merged]);
            continue;
        }
        return rep;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// The last loop of the product is the loop of the right factor.
    P,
    /// The last loop of the product comes from the left factor.
    C,
}

struct PairShape {
    left_blocks: Vec<Block>,
    right_blocks: Vec<Block>,
    common: usize,
}

fn shape(g: &Groupoid, xi: &MinimalElement, phi: &MinimalElement) -> Result<PairShape> {
    let pair = [xi.clone(), phi.clone()];
    if !is_reduced(g, &pair) {
        return Err(Error::NotReduced("the pair cancels or merges".into()));
    }
    let left_blocks = path_decompose(g, &xi.conjugator);
    let right_blocks = path_decompose(g, &phi.conjugator);
    let common = left_blocks.iter().zip(&right_blocks).take_while(|(a, b)| a.word == b.word).count();
    Ok(PairShape { left_blocks, right_blocks, common })
}

/// Case analysis on the conjugators `z = A_1…A_n` of `xi` and `y = B_1…B_m` of `phi`:
/// the pair is C exactly when `y` is a proper block prefix of `z` and `A_{m+1}⁻¹ v` is a path.
pub fn classify_pair(g: &Groupoid, xi: &MinimalElement, phi: &MinimalElement) -> Result<PairKind> {
    let s = shape(g, xi, phi)?;
    let (n, m) = (s.left_blocks.len(), s.right_blocks.len());
    if s.common == m && m < n && s.left_blocks[m].target(g) == phi.base(g) {
        Ok(PairKind::C)
    } else {
        Ok(PairKind::P)
    }
}

/// Rewrites a C-pair `(ξ, φ)` as `(φ, ξ')` with `ξφ = φξ'`, where `ξ' = K⁻¹uK` and
/// `K = A_n⁻¹…A_{m+1}⁻¹ v A_m⁻¹…A_1⁻¹`.
pub fn switch(g: &Groupoid, xi: &MinimalElement, phi: &MinimalElement) -> Result<(MinimalElement, MinimalElement)> {
    if classify_pair(g, xi, phi)? != PairKind::C {
        return Err(Error::NotACPair);
    }
    let k = FWord::concat(&[
        &concat_blocks(&path_decompose(g, &xi.conjugator)[phi_blocks(g, phi)..]).inverse(),
        &phi.loop_word,
        &phi.conjugator.inverse(),
    ]);
    let switched = MinimalElement { conjugator: k.inverse(), loop_word: xi.loop_word.clone() };
    let lhs = xi.element().mul(&phi.element());
    let rhs = phi.element().mul(&switched.element());
    assert_eq!(lhs, rhs, "switch must preserve the product");
    Ok((phi.clone(), switched))
}

fn phi_blocks(g: &Groupoid, phi: &MinimalElement) -> usize {
    path_decompose(g, &phi.conjugator).len()
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
    fn loop_free_conjugator_is_already_minimal() {
        let (g, f, h) = p2();
        let u = w(&[(h, false), (f, false)]);
        let out = minimal_decompose(&g, &w(&[(h, false)]), &u).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].check(&g).is_ok());
    }

    #[test]
    fn peeling_one_loop() {
        let (g, f, h) = p2();
        let z = w(&[(f, false), (f, false), (h, false)]);
        let u = w(&[(h, false), (f, false)]);
        let out = minimal_decompose(&g, &z, &u).unwrap();
        assert_eq!(product(&out), FWord::concat(&[&z, &u, &z.inverse()]));
        for e in &out {
            assert!(e.check(&g).is_ok(), "{e:?}");
        }
        // The peeled loop and its inverse surround the remaining generator.
        assert_eq!(out.len(), 3);
    }

    #[test]
    fn peeling_two_loops() {
        let (g, f, h) = p2();
        // blocks [f] [fg] [g] [gf]
        let z = w(&[(f, false), (f, false), (h, false), (h, false), (h, false), (f, false)]);
        let blocks = path_decompose(&g, &z);
        assert_eq!(blocks.iter().filter(|b| b.is_loop(&g)).count(), 2);
        let u = w(&[(f, false), (h, false)]);
        let out = minimal_decompose(&g, &z, &u).unwrap();
        assert_eq!(product(&out), FWord::concat(&[&z, &u, &z.inverse()]));
        assert!(out.iter().all(|e| e.check(&g).is_ok()));
        // Removing the first loop merges [f] with [g] into a new loop block.
        assert_eq!(out.len(), 7);
    }

    #[test]
    fn not_a_loop() {
        let (g, f, _) = p2();
        assert_eq!(minimal_decompose(&g, &FWord::default(), &w(&[(f, false)])), Err(Error::NotALoop));
    }

    #[test]
    fn reduction_rules() {
        let (g, f, h) = p2();
        let z = w(&[(f, false)]);
        let xi = MinimalElement::new(z.clone(), w(&[(f, false), (h, false)]));
        assert!(reduce_representation(&g, &[xi.clone(), xi.inverse()]).is_empty());
        let u = w(&[(h, false), (f, false)]);
        let e = MinimalElement::new(FWord::default(), u.clone());
        let merged = reduce_representation(&g, &[e.clone(), e.clone()]);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].loop_word, u.mul(&u));
        assert_eq!(product(&merged), product(&[e.clone(), e.clone()]));
        let single = [xi.clone()];
        assert_eq!(reduce_representation(&g, &single), single.to_vec());
    }

    #[test]
    fn c_pair_and_switch() {
        let (g, f, h) = p2();
        // u and v are both loops at b, and f⁻¹v is a path.
        let u = w(&[(f, false), (h, false)]);
        let v = w(&[(h, true), (f, true)]);
        let xi = MinimalElement::new(w(&[(f, false)]), u.clone());
        let phi = MinimalElement::new(FWord::default(), v.clone());
        assert!(xi.check(&g).is_ok() && phi.check(&g).is_ok());
        assert_eq!(classify_pair(&g, &xi, &phi).unwrap(), PairKind::C);
        let (first, second) = switch(&g, &xi, &phi).unwrap();
        assert_eq!(first, phi);
        // ξ' = v⁻¹ f u f⁻¹ v
        let expected = FWord::concat(&[&v.inverse(), &w(&[(f, false)]), &u, &w(&[(f, true)]), &v]);
        assert_eq!(second.element(), expected);
        assert!(second.check(&g).is_ok());
        assert_eq!(classify_pair(&g, &first, &second).unwrap(), PairKind::P);
        assert_eq!(switch(&g, &phi, &second), Err(Error::NotACPair));
    }

    #[test]
    fn same_conjugator_is_p() {
        let g = Groupoid::pair(&["a", "b", "c"]);
        let m = |id: &str| Letter::new(g.morphism_index(id).unwrap(), false);
        let z = FWord(vec![m("a>b")]);
        let at_b = FWord(vec![m("c>b"), m("b>c")]);
        let at_c = FWord(vec![m("b>c"), m("c>b")]);
        let xi = MinimalElement::new(z.clone(), at_b);
        let phi = MinimalElement::new(z, at_c);
        assert!(xi.check(&g).is_ok() && phi.check(&g).is_ok());
        assert_eq!(classify_pair(&g, &xi, &phi).unwrap(), PairKind::P);
        assert!(matches!(classify_pair(&g, &xi, &xi.inverse()), Err(Error::NotReduced(_))));
        assert!(matches!(classify_pair(&g, &xi, &xi), Err(Error::NotReduced(_))));
    }
}
