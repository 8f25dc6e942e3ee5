//! R-chains, congruences on partial actions, quotients and congruence closure.

use crate::algebra::{Elem, FiniteGroup, Group, GroupHom};
use crate::doc::CongruenceDoc;
use crate::error::{Error, Result};
use crate::paction::{validate_morphism, validate_paction, PaMorphism, PartialAction};
use crate::violation::Violation;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Plain union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// True if the classes were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
        ra != rb
    }

    /// Class labels numbered by first occurrence.
    pub(crate) fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label: HashMap<usize, usize> = HashMap::new();
        (0..n)
            .map(|x| {
                let r = self.find(x);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }
}

fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut seen: HashMap<usize, usize> = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = seen.len();
            *seen.entry(l).or_insert(next)
        })
        .collect()
}

fn finite_index(g: &Elem) -> usize {
    match g {
        Elem::Finite(i) => *i,
        _ => panic!("expected an element of a finite-table group"),
    }
}

/// `(x_1 δ_{g_1}, …, x_n δ_{g_n})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RChain(pub Vec<(usize, Elem)>);

impl RChain {
    /// `x_1`.
    pub fn target(&self) -> usize {
        self.0[0].0
    }

    /// `θ_{g_n⁻¹}(x_n)`; the chain must be valid.
    pub fn source(&self, theta: &PartialAction) -> usize {
        let (x, g) = self.0.last().expect("chains are non-empty");
        theta.apply(&theta.group().inv(g), *x).expect("x_n ∈ X_{g_n}")
    }

    /// `g_1 ⋯ g_n`.
    pub fn epsilon(&self, group: &Group) -> Elem {
        self.0.iter().fold(group.identity(), |acc, (_, g)| group.mul(&acc, g))
    }

    pub fn inverse(&self, theta: &PartialAction) -> RChain {
        let group = theta.group();
        RChain(
            self.0
                .iter()
                .rev()
                .map(|(x, g)| {
                    let gi = group.inv(g);
                    (theta.apply(&gi, *x).expect("x_i ∈ X_{g_i}"), gi)
                })
                .collect(),
        )
    }

    /// Reports the first offending position, counted from 1.
    pub fn validate(&self, theta: &PartialAction, congruence: &Congruence) -> Result<()> {
        if self.0.is_empty() {
            return Err(Error::NotAChain(0));
        }
        let group = theta.group();
        let mut previous_source = None;
        for (i, (x, g)) in self.0.iter().enumerate() {
            if *x >= theta.len() || !group.contains(g) || !theta.in_domain(g, *x) {
                return Err(Error::NotAChain(i + 1));
            }
            if let Some(s) = previous_source {
                if !congruence.related(s, *x) {
                    return Err(Error::NotAChain(i + 1));
                }
            }
            previous_source = theta.apply(&group.inv(g), *x);
        }
        Ok(())
    }
}

/// `𝔠 · 𝔬`, defined when `s(𝔠) ∼ t(𝔬)`.
pub fn chain_concat(theta: &PartialAction, congruence: &Congruence, c: &RChain, o: &RChain) -> Result<RChain> {
    c.validate(theta, congruence)?;
    o.validate(theta, congruence)?;
    if !congruence.related(c.source(theta), o.target()) {
        return Err(Error::NotConcatenable);
    }
    Ok(RChain(c.0.iter().chain(&o.0).cloned().collect()))
}

/// `(R, K)`: a partition of the carrier and a normal subgroup of a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    /// Block label of each point, numbered by first occurrence.
    blocks: Vec<usize>,
    pub kernel: BTreeSet<usize>,
}

impl Congruence {
    pub fn from_labels(labels: &[usize], kernel: BTreeSet<usize>) -> Self {
        Congruence { blocks: canonical(labels), kernel }
    }

    /// The least equivalence containing `pairs`, and the normal closure of `kernel`.
    pub fn generated(
        n: usize,
        pairs: &[(usize, usize)],
        group: &FiniteGroup,
        kernel: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        Congruence { blocks: uf.labels(), kernel: group.normal_closure(kernel) }
    }

    pub fn diagonal(n: usize, group: &FiniteGroup) -> Self {
        Congruence { blocks: (0..n).collect(), kernel: BTreeSet::from([group.identity()]) }
    }

    pub fn total(n: usize, group: &FiniteGroup) -> Self {
        Congruence { blocks: vec![0; n], kernel: group.elements().collect() }
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.blocks[x] == self.blocks[y]
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().max().map_or(0, |m| m + 1)
    }

    pub fn block_members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Componentwise `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Congruence) -> bool {
        self.kernel.is_subset(&other.kernel)
            && (0..self.blocks.len()).all(|x| (0..x).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    pub fn to_doc(&self, theta: &PartialAction, group: &FiniteGroup) -> CongruenceDoc {
        let mut relation = Vec::new();
        for members in self.block_members() {
            for &y in &members[1..] {
                relation.push([theta.point_name(members[0]).to_string(), theta.point_name(y).to_string()]);
            }
        }
        CongruenceDoc {
            relation,
            kernel: self
                .kernel
                .iter()
                .filter(|&&k| k != group.identity())
                .map(|&k| group.name(k).to_string())
                .collect(),
        }
    }

    /// Reads generating pairs and kernel generators and closes both.
    pub fn from_doc(doc: &CongruenceDoc, theta: &PartialAction) -> Result<Self> {
        let group = theta.group().finite()?;
        let point = |s: &String| theta.point_index(s).ok_or_else(|| Error::UnknownId { kind: "point", id: s.clone() });
        let pairs = doc.relation.iter().map(|[a, b]| Ok((point(a)?, point(b)?))).collect::<Result<Vec<_>>>()?;
        let kernel = doc
            .kernel
            .iter()
            .map(|k| group.index_of(k).ok_or_else(|| Error::UnknownId { kind: "group element", id: k.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Congruence::generated(theta.len(), &pairs, group, kernel))
    }
}

/// For each coset of `G/K`, the relation between blocks realized by chains with `ε` in that coset.
#[derive(Clone, Debug)]
pub struct CosetRelationTable {
    pub cosets: FiniteGroup,
    /// Coset of each group element.
    pub projection: Vec<usize>,
    /// `relations[c]` holds `(source block, target block)` pairs.
    pub relations: Vec<BTreeSet<(usize, usize)>>,
    witnesses: HashMap<(usize, usize, usize), RChain>,
}

impl CosetRelationTable {
    /// A chain realizing `(coset, source block, target block)`.
    pub fn witness(&self, coset: usize, source: usize, target: usize) -> Option<&RChain> {
        self.witnesses.get(&(coset, source, target))
    }

    /// Two chains in one coset whose sources are related but whose targets are not, or vice versa.
    pub fn conflict(&self) -> Option<(RChain, RChain)> {
        for (c, rel) in self.relations.iter().enumerate() {
            let mut by_source: BTreeMap<usize, usize> = BTreeMap::new();
            let mut by_target: BTreeMap<usize, usize> = BTreeMap::new();
            for &(s, t) in rel {
                if let Some(&t0) = by_source.get(&s) {
                    return Some((self.witnesses[&(c, s, t0)].clone(), self.witnesses[&(c, s, t)].clone()));
                }
                if let Some(&s0) = by_target.get(&t) {
                    return Some((self.witnesses[&(c, s0, t)].clone(), self.witnesses[&(c, s, t)].clone()));
                }
                by_source.insert(s, t);
                by_target.insert(t, s);
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub struct PcReport {
    pub holds: bool,
    pub table: CosetRelationTable,
    pub counterexample: Option<(RChain, RChain)>,
}

fn checked_kernel<'a>(theta: &'a PartialAction, congruence: &Congruence) -> Result<&'a FiniteGroup> {
    let group = theta.group().finite()?;
    if congruence.blocks.len() != theta.len() {
        return Err(Error::Malformed("partition does not cover the carrier".into()));
    }
    if !group.is_normal(&congruence.kernel) {
        return Err(Error::KernelNotNormal);
    }
    Ok(group)
}

/// Closes the length-1 chain relations under concatenation, keeping one witness per entry.
pub fn coset_relation_table(theta: &PartialAction, congruence: &Congruence) -> Result<CosetRelationTable> {
    let group = checked_kernel(theta, congruence)?;
    let (cosets, projection) = group.quotient(&congruence.kernel);
    let nb = congruence.block_count();
    // A link is a length-1 chain (x, g) read from block(θ_{g⁻¹}x) to block(x).
    let mut links_into: Vec<Vec<(usize, Elem, usize)>> = vec![Vec::new(); nb];
    let mut start = Vec::new();
    for g in theta.acting_elements() {
        for u in 0..theta.len() {
            if let Some(x) = theta.apply(&g, u) {
                let link = (x, g.clone(), congruence.block_of(u));
                links_into[congruence.block_of(x)].push(link.clone());
                start.push(link);
            }
        }
    }
    let mut witnesses: HashMap<(usize, usize, usize), RChain> = HashMap::new();
    let mut queue = VecDeque::new();
    for (x, g, sb) in start {
        let key = (projection[finite_index(&g)], sb, congruence.block_of(x));
        if let std::collections::hash_map::Entry::Vacant(e) = witnesses.entry(key) {
            e.insert(RChain(vec![(x, g)]));
            queue.push_back(key);
        }
    }
    while let Some(key @ (c, sb, tb)) = queue.pop_front() {
        for (x, g, next_sb) in &links_into[sb] {
            let next = (cosets.mul(c, projection[finite_index(g)]), *next_sb, tb);
            if !witnesses.contains_key(&next) {
                let mut chain = witnesses[&key].clone();
                chain.0.push((*x, g.clone()));
                witnesses.insert(next, chain);
                queue.push_back(next);
            }
        }
    }
    let mut relations = vec![BTreeSet::new(); cosets.order()];
    for &(c, s, t) in witnesses.keys() {
        relations[c].insert((s, t));
    }
    Ok(CosetRelationTable { cosets, projection, relations, witnesses })
}

/// Axiom (PC), decided by requiring every closed coset relation to be a partial bijection on blocks.
pub fn pc_check(theta: &PartialAction, congruence: &Congruence) -> Result<PcReport> {
    let table = coset_relation_table(theta, congruence)?;
    let counterexample = table.conflict();
    Ok(PcReport { holds: counterexample.is_none(), table, counterexample })
}

/// `x ∼ y ⇔ φ_0(x) = φ_0(y)` and `K = ker φ_1`.
pub fn induced_congruence(phi: &PaMorphism, theta: &PartialAction, rho: &PartialAction) -> Result<Congruence> {
    let group = theta.group().finite()?;
    let kernel =
        group.elements().filter(|&g| rho.group().is_identity(&phi.phi1.apply(rho.group(), &Elem::Finite(g)))).collect();
    Ok(Congruence::from_labels(&phi.phi0, kernel))
}

/// Componentwise intersection.
pub fn congruence_meet(n: usize, group: &FiniteGroup, congruences: &[Congruence]) -> Congruence {
    let mut kernel: BTreeSet<usize> = group.elements().collect();
    let mut signature: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in congruences {
        kernel = kernel.intersection(&c.kernel).copied().collect();
        for (x, sig) in signature.iter_mut().enumerate() {
            sig.push(c.blocks[x]);
        }
    }
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let labels: Vec<usize> = signature
        .into_iter()
        .map(|s| {
            let next = ids.len();
            *ids.entry(s).or_insert(next)
        })
        .collect();
    Congruence::from_labels(&labels, kernel)
}

/// The quotient partial action on blocks over `G/K`, with the projection morphism.
pub fn quotient(theta: &PartialAction, congruence: &Congruence) -> Result<(PartialAction, PaMorphism)> {
    let report = pc_check(theta, congruence)?;
    if !report.holds {
        return Err(Error::PcFails);
    }
    let table = report.table;
    let names = congruence
        .block_members()
        .iter()
        .map(|m| format!("{{{}}}", m.iter().map(|&x| theta.point_name(x)).collect::<Vec<_>>().join(",")))
        .collect();
    let mut out = PartialAction::new(table.cosets.clone(), names);
    for (c, rel) in table.relations.iter().enumerate() {
        if c != table.cosets.identity() {
            out.set_map(Elem::Finite(c), rel.iter().copied());
        }
    }
    let group = Group::from(table.cosets.clone());
    let phi1 = GroupHom::Table(table.projection.iter().map(|&c| Elem::Finite(c)).collect());
    let pi = PaMorphism { phi0: congruence.blocks.clone(), phi1 };
    let mut violations: Vec<Violation> = validate_paction(&out);
    violations.extend(validate_morphism(&pi, theta, &out));
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    debug_assert_eq!(out.group(), &group);
    Ok((out, pi))
}

/// The unique `φ̄: θ/C → ρ` with `φ = φ̄ ∘ π`.
pub fn factor_through(
    phi: &PaMorphism,
    theta: &PartialAction,
    rho: &PartialAction,
    congruence: &Congruence,
) -> Result<(PartialAction, PaMorphism)> {
    let group = theta.group().finite()?;
    for x in 0..theta.len() {
        for y in 0..x {
            if congruence.related(x, y) && phi.phi0[x] != phi.phi0[y] {
                return Err(Error::ContainmentFails(format!(
                    "{} ∼ {} but their images differ",
                    theta.point_name(y),
                    theta.point_name(x)
                )));
            }
        }
    }
    for &k in &congruence.kernel {
        if !rho.group().is_identity(&phi.phi1.apply(rho.group(), &Elem::Finite(k))) {
            return Err(Error::ContainmentFails(format!("{} ∈ K is not in the kernel", group.name(k))));
        }
    }
    let (quot, pi) = quotient(theta, congruence)?;
    let members = congruence.block_members();
    let cosets = quot.group().finite()?;
    let mut representative = vec![usize::MAX; cosets.order()];
    for g in group.elements() {
        let c = finite_index(&pi.phi1.apply(quot.group(), &Elem::Finite(g)));
        if representative[c] == usize::MAX {
            representative[c] = g;
        }
    }
    let bar = PaMorphism {
        phi0: members.iter().map(|m| phi.phi0[m[0]]).collect(),
        phi1: GroupHom::Table(representative.iter().map(|&g| phi.phi1.apply(rho.group(), &Elem::Finite(g))).collect()),
    };
    let violations = validate_morphism(&bar, &quot, rho);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    debug_assert_eq!(PaMorphism::compose(&bar, &pi, theta, &quot, rho).phi0, phi.phi0);
    Ok((quot, bar))
}

/// The least congruence containing `(R0, K0)`: `K` is the normal closure of `K0` and `R`
/// grows by merging the blocks a coset relation fails to keep apart, until (PC) holds.
pub fn congruence_closure(theta: &PartialAction, pairs: &[(usize, usize)], kernel: &[usize]) -> Result<Congruence> {
    let group = theta.group().finite()?;
    let mut congruence = Congruence::generated(theta.len(), pairs, group, kernel.iter().copied());
    loop {
        let table = coset_relation_table(theta, &congruence)?;
        let mut uf = UnionFind::new(congruence.block_count());
        let mut merged = false;
        for rel in &table.relations {
            let mut by_source: BTreeMap<usize, usize> = BTreeMap::new();
            let mut by_target: BTreeMap<usize, usize> = BTreeMap::new();
            for &(s, t) in rel {
                merged |= uf.union(*by_source.entry(s).or_insert(t), t);
                merged |= uf.union(*by_target.entry(t).or_insert(s), s);
            }
        }
        if !merged {
            return Ok(congruence);
        }
        let block_labels = uf.labels();
        let labels: Vec<usize> = congruence.blocks.iter().map(|&b| block_labels[b]).collect();
        congruence = Congruence::from_labels(&labels, congruence.kernel);
    }
}
