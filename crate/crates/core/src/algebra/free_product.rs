use super::finite::FiniteGroup;
use crate::error::{Error, Result};

/// One syllable of a free-product word: a non-identity element of one factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub factor: usize,
    pub elem: usize,
}

/// Free product of finite groups, elements in alternating normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeProduct {
    factors: Vec<FiniteGroup>,
}

impl FreeProduct {
    pub fn new(factors: Vec<FiniteGroup>) -> Self {
        FreeProduct { factors }
    }

    pub fn factors(&self) -> &[FiniteGroup] {
        &self.factors
    }

    /// True when the word is in normal form over these factors.
    pub fn is_normal(&self, word: &[Syllable]) -> bool {
        word.iter().all(|s| self.factors.get(s.factor).is_some_and(|f| s.elem < f.order() && s.elem != f.identity()))
            && word.windows(2).all(|w| w[0].factor != w[1].factor)
    }

    /// Appends one syllable, merging with the last one when they share a factor.
    pub fn push(&self, word: &mut Vec<Syllable>, s: Syllable) {
        let group = &self.factors[s.factor];
        if s.elem == group.identity() {
            return;
        }
        match word.last_mut() {
            Some(last) if last.factor == s.factor => {
                let merged = group.mul(last.elem, s.elem);
                if merged == group.identity() {
                    word.pop();
                } else {
                    last.elem = merged;
                }
            }
            _ => word.push(s),
        }
    }

    pub fn multiply(&self, a: &[Syllable], b: &[Syllable]) -> Result<Vec<Syllable>> {
        if !self.is_normal(a) || !self.is_normal(b) {
            return Err(Error::IncompatibleFreeProducts);
        }
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &[Syllable], b: &[Syllable]) -> Vec<Syllable> {
        let mut out = a.to_vec();
        for &s in b {
            self.push(&mut out, s);
        }
        out
    }

    pub fn invert(&self, a: &[Syllable]) -> Vec<Syllable> {
        a.iter().rev().map(|s| Syllable { factor: s.factor, elem: self.factors[s.factor].inv(s.elem) }).collect()
    }

    /// The group is finite exactly when at most one factor is nontrivial.
    pub fn elements(&self) -> Option<Vec<Vec<Syllable>>> {
        let nontrivial: Vec<usize> = (0..self.factors.len()).filter(|&i| !self.factors[i].is_trivial()).collect();
        match nontrivial.as_slice() {
            [] => Some(vec![vec![]]),
            [i] => {
                let f = &self.factors[*i];
                Some(
                    f.elements()
                        .map(|e| if e == f.identity() { vec![] } else { vec![Syllable { factor: *i, elem: e }] })
                        .collect(),
                )
            }
            _ => None,
        }
    }
}
