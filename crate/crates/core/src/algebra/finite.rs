use crate::doc::FiniteGroupDoc;
use crate::error::{Error, Result};
use crate::violation::{Axiom, Violation};
use std::collections::{BTreeSet, HashMap};

/// A finite group given by its full multiplication table over indexed elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a product function; inverses are found by search.
    /// The caller guarantees the group axioms.
    pub fn from_fn(names: Vec<String>, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let n = names.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b));
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).expect("every element has an inverse"))
            .collect();
        FiniteGroup { names, table, identity, inverses }
    }

    pub fn trivial() -> Self {
        Self::from_fn(vec!["1".into()], 0, |_, _| 0)
    }

    /// Cyclic group of order `n` with elements `1, g, g2, ...`.
    pub fn cyclic_named(n: usize, generator: &str) -> Self {
        assert!(n >= 1);
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => generator.to_string(),
                _ => format!("{generator}{k}"),
            })
            .collect();
        Self::from_fn(names, 0, |a, b| (a + b) % n)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::cyclic_named(n, "r")
    }

    /// Direct product; element names are tuples of factor names.
    pub fn direct_product(factors: &[&FiniteGroup]) -> Self {
        let sizes: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let total: usize = sizes.iter().product();
        let split = |mut i: usize| {
            let mut parts = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                parts[k] = i % sizes[k];
                i /= sizes[k];
            }
            parts
        };
        let join = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (p, s)| acc * s + p);
        let names = (0..total)
            .map(|i| {
                let parts = split(i);
                let inner: Vec<&str> = parts.iter().zip(factors).map(|(&p, f)| f.name(p)).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        let identity = join(&factors.iter().map(|f| f.identity()).collect::<Vec<_>>());
        Self::from_fn(names, identity, |a, b| {
            let (pa, pb) = (split(a), split(b));
            let prod: Vec<usize> = factors.iter().enumerate().map(|(k, f)| f.mul(pa[k], pb[k])).collect();
            join(&prod)
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn generated(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in &gens {
                let p = self.mul(a, g);
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, set: &BTreeSet<usize>) -> bool {
        self.is_subgroup(set)
            && self.elements().all(|g| set.iter().all(|&k| set.contains(&self.mul(self.mul(g, k), self.inv(g)))))
    }

    pub fn normal_closure(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let conjugates: Vec<usize> = gens
            .into_iter()
            .flat_map(|k| self.elements().map(move |g| (g, k)))
            .map(|(g, k)| self.mul(self.mul(g, k), self.inv(g)))
            .collect();
        self.generated(conjugates)
    }

    /// All subgroups, found as joins of cyclic subgroups.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let cyclic: Vec<BTreeSet<usize>> = self.elements().map(|g| self.generated([g])).collect();
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::from([BTreeSet::from([self.identity])]);
        let mut frontier: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                let joined = self.generated(h.iter().chain(c).copied());
                if found.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn normal_subgroups(&self) -> Vec<BTreeSet<usize>> {
        self.subgroups().into_iter().filter(|h| self.is_normal(h)).collect()
    }

    /// Restriction to a subgroup, keeping element names; also returns the embedding.
    pub fn subgroup(&self, members: &BTreeSet<usize>) -> (FiniteGroup, Vec<usize>) {
        let embed: Vec<usize> = members.iter().copied().collect();
        let pos: HashMap<usize, usize> = embed.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let names = embed.iter().map(|&g| self.names[g].clone()).collect();
        let group = Self::from_fn(names, pos[&self.identity], |a, b| pos[&self.mul(embed[a], embed[b])]);
        (group, embed)
    }

    /// Quotient by a normal subgroup; cosets are named by their member lists.
    pub fn quotient(&self, normal: &BTreeSet<usize>) -> (FiniteGroup, Vec<usize>) {
        let mut projection = vec![usize::MAX; self.order()];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in self.elements() {
            if projection[g] != usize::MAX {
                continue;
            }
            let coset: Vec<usize> = {
                let mut c: Vec<usize> = normal.iter().map(|&k| self.mul(g, k)).collect();
                c.sort_unstable();
                c
            };
            for &h in &coset {
                projection[h] = cosets.len();
            }
            cosets.push(coset);
        }
        let names = cosets
            .iter()
            .map(|c| format!("{{{}}}", c.iter().map(|&g| self.name(g)).collect::<Vec<_>>().join(",")))
            .collect();
        let group =
            Self::from_fn(names, projection[self.identity], |a, b| projection[self.mul(cosets[a][0], cosets[b][0])]);
        (group, projection)
    }

    pub fn to_doc(&self) -> FiniteGroupDoc {
        let mut mul = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                mul.push([self.names[a].clone(), self.names[b].clone(), self.names[self.mul(a, b)].clone()]);
            }
        }
        FiniteGroupDoc {
            elements: self.names.clone(),
            mul,
            id: self.names[self.identity].clone(),
            inv: self.elements().map(|a| [self.names[a].clone(), self.names[self.inv(a)].clone()]).collect(),
        }
    }

    pub fn from_doc(doc: &FiniteGroupDoc) -> Result<Self> {
        let violations = validate_finite_group(doc);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let index: HashMap<&str, usize> = doc.elements.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let n = doc.elements.len();
        let mut table = vec![0; n * n];
        for [a, b, p] in &doc.mul {
            table[index[a.as_str()] * n + index[b.as_str()]] = index[p.as_str()];
        }
        let mut inverses = vec![0; n];
        for [a, b] in &doc.inv {
            inverses[index[a.as_str()]] = index[b.as_str()];
        }
        Ok(FiniteGroup { names: doc.elements.clone(), table, identity: index[doc.id.as_str()], inverses })
    }

    /// Axiom scan of an indexed table: identity, inverses, associativity.
    fn axiom_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let e = self.identity;
        for a in self.elements() {
            if self.mul(e, a) != a || self.mul(a, e) != a {
                out.push(Violation::new(
                    Axiom::Identity,
                    format!("{} is not a unit for {}", self.name(e), self.name(a)),
                ));
            }
            let b = self.inv(a);
            if self.mul(a, b) != e || self.mul(b, a) != e {
                out.push(Violation::new(
                    Axiom::Inverse,
                    format!("{} is not inverse to {}", self.name(b), self.name(a)),
                ));
            }
        }
        'outer: for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        out.push(Violation::new(
                            Axiom::Associativity,
                            format!(
                                "({}{}){} differs from {}({}{})",
                                self.name(a),
                                self.name(b),
                                self.name(c),
                                self.name(a),
                                self.name(b),
                                self.name(c)
                            ),
                        ));
                        break 'outer;
                    }
                }
            }
        }
        out
    }
}

/// Lists every violated group axiom; an empty list means the table is a group.
pub fn validate_finite_group(doc: &FiniteGroupDoc) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in doc.elements.iter().enumerate() {
        if index.insert(name, i).is_some() {
            out.push(Violation::new(Axiom::Totality, format!("element {name} listed twice")));
        }
    }
    let n = doc.elements.len();
    if n == 0 {
        out.push(Violation::new(Axiom::Identity, "empty carrier"));
        return out;
    }
    let lookup = |name: &str, out: &mut Vec<Violation>| {
        let found = index.get(name).copied();
        if found.is_none() {
            out.push(Violation::new(Axiom::Closure, format!("{name} is not an element")));
        }
        found
    };
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    for [a, b, p] in &doc.mul {
        let (a, b, p) = (lookup(a, &mut out), lookup(b, &mut out), lookup(p, &mut out));
        if let (Some(a), Some(b), Some(p)) = (a, b, p) {
            if table[a * n + b].replace(p).is_some_and(|old| old != p) {
                out.push(Violation::new(
                    Axiom::Totality,
                    format!("product of {} and {} given twice", doc.elements[a], doc.elements[b]),
                ));
            }
        }
    }
    let identity = lookup(&doc.id, &mut out);
    let mut inverses: Vec<Option<usize>> = vec![None; n];
    for [a, b] in &doc.inv {
        if let (Some(a), Some(b)) = (lookup(a, &mut out), lookup(b, &mut out)) {
            inverses[a] = Some(b);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if table[a * n + b].is_none() {
                out.push(Violation::new(
                    Axiom::Totality,
                    format!("no product for ({}, {})", doc.elements[a], doc.elements[b]),
                ));
            }
        }
        if inverses[a].is_none() {
            out.push(Violation::new(Axiom::Totality, format!("no inverse listed for {}", doc.elements[a])));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let group = FiniteGroup {
        names: doc.elements.clone(),
        table: table.into_iter().map(Option::unwrap).collect(),
        identity: identity.unwrap(),
        inverses: inverses.into_iter().map(Option::unwrap).collect(),
    };
    group.axiom_violations()
}
