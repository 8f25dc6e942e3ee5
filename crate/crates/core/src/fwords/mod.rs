//! Words in the free group on morphism symbols, evaluated in a groupoid.

mod minimal;
mod palg;

pub use minimal::{
    classify_pair, is_reduced, minimal_decompose, product, reduce_representation, switch, MinimalElement, PairKind,
};
pub use palg::{has_p_property, loop_check_theorem, p_algorithm, LoopCheck, PRun};

use crate::doc::FWordDoc;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub morphism: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(morphism: usize, inverse: bool) -> Self {
        Letter { morphism, inverse }
    }

    pub fn inverted(self) -> Self {
        Letter { morphism: self.morphism, inverse: !self.inverse }
    }

    /// The groupoid morphism this letter evaluates to.
    pub fn value(self, g: &Groupoid) -> usize {
        if self.inverse {
            g.inv(self.morphism)
        } else {
            self.morphism
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FWord(pub Vec<Letter>);

impl FWord {
    pub fn letter(morphism: usize) -> Self {
        FWord(vec![Letter::new(morphism, false)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn reduced(&self) -> FWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverted())
    }

    pub fn inverse(&self) -> FWord {
        FWord(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// Reduced product.
    pub fn mul(&self, other: &FWord) -> FWord {
        FWord(self.0.iter().chain(&other.0).copied().collect()).reduced()
    }

    pub fn concat(parts: &[&FWord]) -> FWord {
        FWord(parts.iter().flat_map(|w| w.0.iter().copied()).collect()).reduced()
    }

    pub fn to_doc(&self, g: &Groupoid) -> FWordDoc {
        self.0.iter().map(|l| (g.morphism_name(l.morphism).to_string(), if l.inverse { -1 } else { 1 })).collect()
    }

    pub fn from_doc(doc: &FWordDoc, g: &Groupoid) -> Result<Self> {
        doc.iter()
            .map(|(id, sign)| {
                let m = g.morphism_index(id).ok_or_else(|| Error::UnknownId { kind: "morphism", id: id.clone() })?;
                match sign {
                    1 => Ok(Letter::new(m, false)),
                    -1 => Ok(Letter::new(m, true)),
                    _ => Err(Error::Malformed(format!("sign {sign} must be 1 or -1"))),
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(FWord)
    }
}

/// The value of a word in the groupoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiValue {
    /// The empty word: the identity map of the object set, not a morphism.
    IdentityMap,
    Morphism(usize),
    Empty,
}

/// Evaluates the reduced form left to right; letters must index morphisms of `g`.
pub fn pi_eval(g: &Groupoid, w: &FWord) -> PiValue {
    let w = w.reduced();
    let mut letters = w.0.iter();
    let Some(first) = letters.next() else {
        return PiValue::IdentityMap;
    };
    let mut acc = first.value(g);
    for l in letters {
        match g.compose(acc, l.value(g)) {
            Some(c) => acc = c,
            None => return PiValue::Empty,
        }
    }
    PiValue::Morphism(acc)
}

pub fn is_loop(g: &Groupoid, w: &FWord) -> bool {
    matches!(pi_eval(g, w), PiValue::Morphism(m) if g.is_identity(m))
}

/// A maximal path: a subword whose value is a morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub word: FWord,
    pub value: usize,
}

impl Block {
    pub fn source(&self, g: &Groupoid) -> usize {
        g.src(self.value)
    }

    pub fn target(&self, g: &Groupoid) -> usize {
        g.tgt(self.value)
    }

    pub fn is_loop(&self, g: &Groupoid) -> bool {
        g.is_identity(self.value)
    }
}

/// Splits the reduced form of `w` into maximal paths, consecutive ones unlinked.
pub fn path_decompose(g: &Groupoid, w: &FWord) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for &l in &w.reduced().0 {
        let v = l.value(g);
        match blocks.last_mut() {
            Some(b) if g.compose(b.value, v).is_some() => {
                b.value = g.compose(b.value, v).unwrap();
                b.word.0.push(l);
            }
            _ => blocks.push(Block { word: FWord(vec![l]), value: v }),
        }
    }
    blocks
}
