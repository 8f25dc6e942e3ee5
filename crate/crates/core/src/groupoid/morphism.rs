use super::Groupoid;
use crate::doc::GroupoidMorphismDoc;
use crate::error::{Error, Result};
use crate::violation::{Axiom, Violation};

/// A functor between groupoids: object map and morphism map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidMorphism {
    pub f0: Vec<usize>,
    pub f1: Vec<usize>,
}

impl GroupoidMorphism {
    pub fn identity(g: &Groupoid) -> Self {
        GroupoidMorphism { f0: (0..g.object_count()).collect(), f1: (0..g.morphism_count()).collect() }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &GroupoidMorphism) -> Self {
        GroupoidMorphism {
            f0: inner.f0.iter().map(|&x| self.f0[x]).collect(),
            f1: inner.f1.iter().map(|&m| self.f1[m]).collect(),
        }
    }

    pub fn violations(&self, source: &Groupoid, target: &Groupoid) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.f0.len() != source.object_count()
            || self.f1.len() != source.morphism_count()
            || self.f0.iter().any(|&x| x >= target.object_count())
            || self.f1.iter().any(|&m| m >= target.morphism_count())
        {
            out.push(Violation::new(Axiom::Shape, "maps do not match the groupoids"));
            return out;
        }
        for k in 0..source.morphism_count() {
            let img = self.f1[k];
            let name = source.morphism_name(k);
            if target.src(img) != self.f0[source.src(k)] || target.tgt(img) != self.f0[source.tgt(k)] {
                out.push(Violation::new(Axiom::Endpoints, format!("image of {name} has wrong endpoints")));
            }
            if target.inv(img) != self.f1[source.inv(k)] {
                out.push(Violation::new(Axiom::Inverse, format!("inverse of {name} not preserved")));
            }
        }
        for x in 0..source.object_count() {
            if self.f1[source.ident(x)] != target.ident(self.f0[x]) {
                out.push(Violation::new(
                    Axiom::Identity,
                    format!("identity at {} not preserved", source.object_name(x)),
                ));
            }
        }
        for l in 0..source.morphism_count() {
            for r in 0..source.morphism_count() {
                if let Some(c) = source.compose(l, r) {
                    if target.compose(self.f1[l], self.f1[r]) != Some(self.f1[c]) {
                        out.push(Violation::new(
                            Axiom::Composition,
                            format!("{}{} not preserved", source.morphism_name(l), source.morphism_name(r)),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Inverse maps when both components are bijections.
    pub fn inverse(&self, target: &Groupoid) -> Option<GroupoidMorphism> {
        let f0 = invert(&self.f0, target.object_count())?;
        let f1 = invert(&self.f1, target.morphism_count())?;
        Some(GroupoidMorphism { f0, f1 })
    }

    pub fn to_doc(&self, source: &Groupoid, target: &Groupoid) -> GroupoidMorphismDoc {
        GroupoidMorphismDoc {
            f0: self
                .f0
                .iter()
                .enumerate()
                .map(|(x, &y)| (source.object_name(x).into(), target.object_name(y).into()))
                .collect(),
            f1: self
                .f1
                .iter()
                .enumerate()
                .map(|(m, &n)| (source.morphism_name(m).into(), target.morphism_name(n).into()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &GroupoidMorphismDoc, source: &Groupoid, target: &Groupoid) -> Result<Self> {
        let resolve = |map: &std::collections::BTreeMap<String, String>,
                       names: &[String],
                       lookup: &dyn Fn(&str) -> Option<usize>,
                       kind| {
            names
                .iter()
                .map(|n| {
                    let v = map.get(n).ok_or_else(|| Error::Malformed(format!("no image for {kind} {n}")))?;
                    lookup(v).ok_or_else(|| Error::UnknownId { kind, id: v.clone() })
                })
                .collect::<Result<Vec<usize>>>()
        };
        Ok(GroupoidMorphism {
            f0: resolve(&doc.f0, source.object_names(), &|s| target.object_index(s), "object")?,
            f1: resolve(&doc.f1, source.morphism_names(), &|s| target.morphism_index(s), "morphism")?,
        })
    }
}

pub(crate) fn invert(map: &[usize], size: usize) -> Option<Vec<usize>> {
    if map.len() != size {
        return None;
    }
    let mut back = vec![usize::MAX; size];
    for (i, &j) in map.iter().enumerate() {
        if j >= size || back[j] != usize::MAX {
            return None;
        }
        back[j] = i;
    }
    Some(back)
}

/// True iff `f` is bijective on objects and morphisms and its inverse is again a morphism.
pub fn groupoid_iso_check(f: &GroupoidMorphism, source: &Groupoid, target: &Groupoid) -> bool {
    f.violations(source, target).is_empty()
        && f.inverse(target).is_some_and(|inv| inv.violations(target, source).is_empty())
}
