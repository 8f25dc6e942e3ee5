//! Finite groupoids with composition written "left after right".

mod build;
mod morphism;
mod realize;

pub(crate) use morphism::invert as invert_map;
pub use morphism::{groupoid_iso_check, GroupoidMorphism};
pub use realize::{isotropy, realize_connected, GlobalRealization};

use crate::doc::{GroupoidDoc, MorphismDoc};
use crate::error::{Error, Result};
use crate::violation::{Axiom, Violation};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    /// Row-major `left * m + right`.
    compose: Vec<Option<usize>>,
    ident: Vec<usize>,
    inv: Vec<usize>,
}

/// A connected component together with its embedding into the parent groupoid.
#[derive(Clone, Debug)]
pub struct Component {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub groupoid: Groupoid,
}

impl Groupoid {
    /// Assembles a groupoid from raw tables without checking the axioms.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        compose: impl Fn(usize, usize) -> Option<usize>,
        ident: Vec<usize>,
        inv: Vec<usize>,
    ) -> Self {
        let m = morphisms.len();
        let mut table = Vec::with_capacity(m * m);
        for l in 0..m {
            for r in 0..m {
                table.push(compose(l, r));
            }
        }
        let (names, (src, tgt)): (Vec<String>, (Vec<usize>, Vec<usize>)) =
            morphisms.into_iter().map(|(n, s, t)| (n, (s, t))).unzip();
        Groupoid { objects, morphisms: names, src, tgt, compose: table, ident, inv }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, m: usize) -> &str {
        &self.morphisms[m]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_names(&self) -> &[String] {
        &self.morphisms
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|n| n == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|n| n == name)
    }

    pub fn src(&self, m: usize) -> usize {
        self.src[m]
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.tgt[m]
    }

    pub fn ident(&self, x: usize) -> usize {
        self.ident[x]
    }

    pub fn inv(&self, m: usize) -> usize {
        self.inv[m]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.ident[self.src[m]] == m
    }

    /// `left ∘ right`, defined when `src(left) = tgt(right)`.
    pub fn compose(&self, left: usize, right: usize) -> Option<usize> {
        self.compose[left * self.morphisms.len() + right]
    }

    pub fn hom(&self, from: usize, to: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphism_count()).filter(move |&m| self.src[m] == from && self.tgt[m] == to)
    }

    /// Lists violated groupoid axioms; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.morphism_count();
        let name = |k: usize| self.morphisms[k].as_str();
        for x in 0..self.object_count() {
            let e = self.ident[x];
            if self.src[e] != x || self.tgt[e] != x {
                out.push(Violation::new(
                    Axiom::Endpoints,
                    format!("identity {} is not a loop at {}", name(e), self.objects[x]),
                ));
            }
        }
        for l in 0..m {
            for r in 0..m {
                let composable = self.src[l] == self.tgt[r];
                match (self.compose(l, r), composable) {
                    (Some(_), false) => {
                        out.push(Violation::new(Axiom::ComposeDomain, format!("({}, {})", name(l), name(r))))
                    }
                    (None, true) => {
                        out.push(Violation::new(Axiom::MissingComposite, format!("({}, {})", name(l), name(r))))
                    }
                    (Some(c), true) if self.src[c] != self.src[r] || self.tgt[c] != self.tgt[l] => {
                        out.push(Violation::new(
                            Axiom::Endpoints,
                            format!("{} = {}{} has wrong endpoints", name(c), name(l), name(r)),
                        ))
                    }
                    _ => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for k in 0..m {
            if self.compose(self.ident[self.tgt[k]], k) != Some(k)
                || self.compose(k, self.ident[self.src[k]]) != Some(k)
            {
                out.push(Violation::new(Axiom::Identity, format!("identities are not units for {}", name(k))));
            }
            let i = self.inv[k];
            if self.compose(k, i) != Some(self.ident[self.tgt[k]])
                || self.compose(i, k) != Some(self.ident[self.src[k]])
            {
                out.push(Violation::new(Axiom::Inverse, format!("{} is not inverse to {}", name(i), name(k))));
            }
        }
        'assoc: for a in 0..m {
            for b in self.hom_into(self.src[a]) {
                let ab = self.compose(a, b).unwrap();
                for c in self.hom_into(self.src[b]) {
                    if self.compose(ab, c) != self.compose(a, self.compose(b, c).unwrap()) {
                        out.push(Violation::new(Axiom::Associativity, format!("({}{}){}", name(a), name(b), name(c))));
                        break 'assoc;
                    }
                }
            }
        }
        out
    }

    fn hom_into(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphism_count()).filter(move |&m| self.tgt[m] == x)
    }

    pub fn connected_components(&self) -> Vec<Component> {
        let n = self.object_count();
        let mut label: Vec<usize> = (0..n).collect();
        fn find(label: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while label[r] != r {
                r = label[r];
            }
            label[x] = r;
            r
        }
        for k in 0..self.morphism_count() {
            let (a, b) = (find(&mut label, self.src[k]), find(&mut label, self.tgt[k]));
            if a != b {
                label[a.max(b)] = a.min(b);
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let r = find(&mut label, x);
            let b = *block_of.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(x);
        }
        blocks.into_iter().map(|objects| self.full_subgroupoid(&objects)).collect()
    }

    /// The full subgroupoid on the given objects.
    pub fn full_subgroupoid(&self, objects: &[usize]) -> Component {
        let obj_pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let morphisms: Vec<usize> = (0..self.morphism_count())
            .filter(|&k| obj_pos.contains_key(&self.src[k]) && obj_pos.contains_key(&self.tgt[k]))
            .collect();
        let mor_pos: HashMap<usize, usize> = morphisms.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let groupoid = Groupoid::from_parts(
            objects.iter().map(|&x| self.objects[x].clone()).collect(),
            morphisms
                .iter()
                .map(|&k| (self.morphisms[k].clone(), obj_pos[&self.src[k]], obj_pos[&self.tgt[k]]))
                .collect(),
            |l, r| self.compose(morphisms[l], morphisms[r]).map(|c| mor_pos[&c]),
            objects.iter().map(|&x| mor_pos[&self.ident[x]]).collect(),
            morphisms.iter().map(|&k| mor_pos[&self.inv[k]]).collect(),
        );
        Component { objects: objects.to_vec(), morphisms, groupoid }
    }

    pub fn to_doc(&self) -> GroupoidDoc {
        let m = self.morphism_count();
        let mut compose = Vec::new();
        for l in 0..m {
            for r in 0..m {
                if let Some(c) = self.compose(l, r) {
                    compose.push([self.morphisms[l].clone(), self.morphisms[r].clone(), self.morphisms[c].clone()]);
                }
            }
        }
        GroupoidDoc {
            objects: self.objects.clone(),
            morphisms: (0..m)
                .map(|k| MorphismDoc {
                    id: self.morphisms[k].clone(),
                    src: self.objects[self.src[k]].clone(),
                    tgt: self.objects[self.tgt[k]].clone(),
                })
                .collect(),
            compose,
            identity: (0..self.object_count())
                .map(|x| (self.objects[x].clone(), self.morphisms[self.ident[x]].clone()))
                .collect(),
            inverse: (0..m).map(|k| (self.morphisms[k].clone(), self.morphisms[self.inv[k]].clone())).collect(),
        }
    }

    /// Resolves names; fails on unknown or duplicate identifiers, not on axiom violations.
    pub fn from_doc(doc: &GroupoidDoc) -> Result<Self> {
        let objects = index_names(&doc.objects, "object")?;
        let ids: Vec<String> = doc.morphisms.iter().map(|m| m.id.clone()).collect();
        let morphisms = index_names(&ids, "morphism")?;
        let obj = |s: &str| objects.get(s).copied().ok_or_else(|| Error::UnknownId { kind: "object", id: s.into() });
        let mor =
            |s: &str| morphisms.get(s).copied().ok_or_else(|| Error::UnknownId { kind: "morphism", id: s.into() });
        let m = ids.len();
        let mut endpoints = Vec::with_capacity(m);
        for md in &doc.morphisms {
            endpoints.push((md.id.clone(), obj(&md.src)?, obj(&md.tgt)?));
        }
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for [l, r, c] in &doc.compose {
            if table.insert((mor(l)?, mor(r)?), mor(c)?).is_some() {
                return Err(Error::DuplicateId { kind: "composite", id: format!("({l}, {r})") });
            }
        }
        let mut ident = vec![usize::MAX; doc.objects.len()];
        for (x, k) in &doc.identity {
            ident[obj(x)?] = mor(k)?;
        }
        if let Some(x) = ident.iter().position(|&k| k == usize::MAX) {
            return Err(Error::Malformed(format!("no identity given for object {}", doc.objects[x])));
        }
        let mut inv = vec![usize::MAX; m];
        for (k, i) in &doc.inverse {
            inv[mor(k)?] = mor(i)?;
        }
        if let Some(k) = inv.iter().position(|&i| i == usize::MAX) {
            return Err(Error::Malformed(format!("no inverse given for morphism {}", ids[k])));
        }
        Ok(Groupoid::from_parts(doc.objects.clone(), endpoints, |l, r| table.get(&(l, r)).copied(), ident, inv))
    }
}

fn index_names(names: &[String], kind: &'static str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateId { kind, id: n.clone() });
        }
    }
    Ok(map)
}
