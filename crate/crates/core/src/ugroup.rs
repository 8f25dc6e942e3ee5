//! Normal-form arithmetic in the universal group of a groupoid.
//!
//! An element is a sequence of non-identity morphisms in which no two neighbours compose.

use crate::doc::UWordDoc;
use crate::error::{Error, Result};
use crate::fwords::{FWord, PiValue};
use crate::groupoid::Groupoid;
use crate::violation::{Axiom, Violation};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UWord(pub Vec<usize>);

impl UWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_doc(&self, g: &Groupoid) -> UWordDoc {
        self.0.iter().map(|&m| g.morphism_name(m).to_string()).collect()
    }

    /// Reads morphism ids and normalizes them into a single class.
    pub fn from_doc(doc: &UWordDoc, g: &Groupoid) -> Result<Self> {
        let mut word = UWord::default();
        for id in doc {
            let m = g.morphism_index(id).ok_or_else(|| Error::UnknownId { kind: "morphism", id: id.clone() })?;
            push(g, &mut word, m);
        }
        Ok(word)
    }
}

/// The class of a single morphism: empty for identities.
pub fn letter(g: &Groupoid, m: usize) -> UWord {
    if g.is_identity(m) {
        UWord::default()
    } else {
        UWord(vec![m])
    }
}

pub fn is_normal_form(g: &Groupoid, w: &UWord) -> bool {
    w.0.iter().all(|&m| m < g.morphism_count() && !g.is_identity(m))
        && w.0.windows(2).all(|p| g.compose(p[0], p[1]).is_none())
}

/// Appends a morphism on the right, collapsing composable junctions.
pub fn push(g: &Groupoid, w: &mut UWord, m: usize) {
    let mut current = m;
    loop {
        if g.is_identity(current) {
            return;
        }
        match w.0.last().and_then(|&last| g.compose(last, current)) {
            Some(c) => {
                w.0.pop();
                current = c;
            }
            None => {
                w.0.push(current);
                return;
            }
        }
    }
}

pub fn multiply(g: &Groupoid, a: &UWord, b: &UWord) -> UWord {
    let mut out = a.clone();
    for &m in &b.0 {
        push(g, &mut out, m);
    }
    out
}

pub fn invert(g: &Groupoid, a: &UWord) -> UWord {
    UWord(a.0.iter().rev().map(|&m| g.inv(m)).collect())
}

/// The class of a free-group word.
pub fn project(g: &Groupoid, w: &FWord) -> UWord {
    let mut out = UWord::default();
    for l in &w.0 {
        push(g, &mut out, if l.inverse { g.inv(l.morphism) } else { l.morphism });
    }
    out
}

/// Identity map for the trivial class, the morphism for a single letter, empty otherwise.
pub fn psi_of(a: &UWord) -> PiValue {
    match a.0.as_slice() {
        [] => PiValue::IdentityMap,
        [m] => PiValue::Morphism(*m),
        _ => PiValue::Empty,
    }
}

/// Checks the defining relations on every pair of generators.
pub fn presentation_check(g: &Groupoid) -> Vec<Violation> {
    let mut out = Vec::new();
    let m = g.morphism_count();
    for x in 0..g.object_count() {
        if !letter(g, g.ident(x)).is_empty() {
            out.push(Violation::new(
                Axiom::Identity,
                format!("class of identity at {} is not trivial", g.object_name(x)),
            ));
        }
    }
    for a in 0..m {
        for b in 0..m {
            let product = multiply(g, &letter(g, a), &letter(g, b));
            let expected = match g.compose(a, b) {
                Some(c) => letter(g, c),
                None => UWord(letter(g, a).0.into_iter().chain(letter(g, b).0).collect()),
            };
            if product != expected {
                out.push(Violation::new(
                    Axiom::Composition,
                    format!("[{}][{}] does not normalize as expected", g.morphism_name(a), g.morphism_name(b)),
                ));
            }
        }
    }
    out
}

/// All normal forms of length at most `max_len`, shortest first.
pub fn enumerate_normal_forms(g: &Groupoid, max_len: usize) -> Vec<UWord> {
    let letters: Vec<usize> = (0..g.morphism_count()).filter(|&m| !g.is_identity(m)).collect();
    let mut out = vec![UWord::default()];
    let mut layer = vec![UWord::default()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &m in &letters {
                if w.0.last().is_none_or(|&last| g.compose(last, m).is_none()) {
                    let mut v = w.clone();
                    v.0.push(m);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every element, when all non-identity morphisms are loops at one object
/// whose component has no other objects; the group is then that isotropy group.
pub fn finite_elements(g: &Groupoid) -> Option<Vec<UWord>> {
    let letters: Vec<usize> = (0..g.morphism_count()).filter(|&m| !g.is_identity(m)).collect();
    let Some(&first) = letters.first() else {
        return Some(vec![UWord::default()]);
    };
    let x = g.src(first);
    if letters.iter().all(|&m| g.src(m) == x && g.tgt(m) == x) {
        Some(std::iter::once(UWord::default()).chain(letters.into_iter().map(|m| UWord(vec![m]))).collect())
    } else {
        None
    }
}
