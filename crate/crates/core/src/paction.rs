//! Partial actions of groups on finite sets, their morphisms, and reduction.

use crate::algebra::{Elem, FiniteGroup, Group, GroupHom};
use crate::doc::{PaMorphismDoc, PartialActionDoc};
use crate::error::{Error, Result};
use crate::violation::{Axiom, Violation};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// `θ = (G, X, {X_g}, {θ_g})` with finitely many non-empty `θ_g`.
///
/// `maps[g]` is keyed by `x ∈ X_{g⁻¹}` with value `θ_g(x)`. The identity acts totally
/// whether or not it is stored; a stored identity entry is only consulted by validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAction {
    group: Group,
    carrier: Vec<String>,
    index: HashMap<String, usize>,
    domains: BTreeMap<Elem, BTreeSet<usize>>,
    maps: BTreeMap<Elem, BTreeMap<usize, usize>>,
}

impl PartialAction {
    /// Only the identity acts.
    pub fn new(group: impl Into<Group>, carrier: Vec<String>) -> Self {
        let index = carrier.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        PartialAction { group: group.into(), carrier, index, domains: BTreeMap::new(), maps: BTreeMap::new() }
    }

    /// A global action of a finite group, `act(g, x)`.
    pub fn global(group: &FiniteGroup, carrier: Vec<String>, act: impl Fn(usize, usize) -> usize) -> Self {
        let n = carrier.len();
        let mut out = PartialAction::new(group.clone(), carrier);
        for g in group.elements().filter(|&g| g != group.identity()) {
            out.set_map(Elem::Finite(g), (0..n).map(|x| (x, act(g, x))));
        }
        out
    }

    /// Stores `θ_g` exactly as given, with `X_g` its image.
    pub fn set_map(&mut self, g: Elem, pairs: impl IntoIterator<Item = (usize, usize)>) {
        let map: BTreeMap<usize, usize> = pairs.into_iter().collect();
        if map.is_empty() {
            self.domains.remove(&g);
            self.maps.remove(&g);
        } else {
            self.domains.insert(g.clone(), map.values().copied().collect());
            self.maps.insert(g, map);
        }
    }

    /// Stores `θ_g` and `θ_{g⁻¹} = θ_g⁻¹`.
    pub fn insert(&mut self, g: Elem, pairs: impl IntoIterator<Item = (usize, usize)>) {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        let inverse = self.group.inv(&g);
        if inverse != g {
            self.set_map(inverse, pairs.iter().map(|&(x, y)| (y, x)));
        }
        self.set_map(g, pairs);
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn point_name(&self, x: usize) -> &str {
        &self.carrier[x]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// `θ_g(x)`, if `x ∈ X_{g⁻¹}`.
    pub fn apply(&self, g: &Elem, x: usize) -> Option<usize> {
        if self.group.is_identity(g) {
            return (x < self.carrier.len()).then_some(x);
        }
        self.maps.get(g)?.get(&x).copied()
    }

    /// `X_g`.
    pub fn domain(&self, g: &Elem) -> BTreeSet<usize> {
        if self.group.is_identity(g) {
            return (0..self.carrier.len()).collect();
        }
        self.domains.get(g).cloned().unwrap_or_default()
    }

    pub fn in_domain(&self, g: &Elem, x: usize) -> bool {
        if self.group.is_identity(g) {
            return x < self.carrier.len();
        }
        self.domains.get(g).is_some_and(|d| d.contains(&x))
    }

    /// Non-identity elements with a non-empty map, in element order.
    pub fn support(&self) -> impl Iterator<Item = &Elem> + '_ {
        self.maps.keys().filter(|g| !self.group.is_identity(g))
    }

    /// Non-identity `(g, θ_g)` pairs.
    pub fn entries(&self) -> impl Iterator<Item = (&Elem, &BTreeMap<usize, usize>)> + '_ {
        self.maps.iter().filter(|(g, _)| !self.group.is_identity(g))
    }

    /// The identity followed by the support.
    pub fn acting_elements(&self) -> Vec<Elem> {
        std::iter::once(self.group.identity()).chain(self.support().cloned()).collect()
    }

    /// `θ` restricted to a subset `Y`: `θ_g` is cut down to `Y ∩ θ_g⁻¹(Y)`.
    pub fn restrict(&self, subset: &BTreeSet<usize>) -> PartialAction {
        let kept: Vec<usize> = subset.iter().copied().collect();
        let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut out = PartialAction::new(self.group.clone(), kept.iter().map(|&x| self.carrier[x].clone()).collect());
        for (g, map) in self.entries() {
            let pairs: Vec<(usize, usize)> =
                map.iter().filter_map(|(x, y)| Some((*new_index.get(x)?, *new_index.get(y)?))).collect();
            out.set_map(g.clone(), pairs);
        }
        out
    }

    pub fn to_doc(&self) -> PartialActionDoc {
        let name = |g: &Elem| self.group.name(g);
        PartialActionDoc {
            group: self.group.to_doc(),
            set: self.carrier.clone(),
            domains: self
                .domains
                .iter()
                .filter(|(g, _)| !self.group.is_identity(g))
                .map(|(g, d)| (name(g), d.iter().map(|&x| self.carrier[x].clone()).collect()))
                .collect(),
            maps: self
                .entries()
                .map(|(g, m)| {
                    (name(g), m.iter().map(|(&x, &y)| (self.carrier[x].clone(), self.carrier[y].clone())).collect())
                })
                .collect(),
        }
    }

    /// Reads a document without checking the axioms; see [`validate_paction`].
    pub fn from_doc(doc: &PartialActionDoc) -> Result<Self> {
        let group = Group::from_doc(&doc.group)?;
        let mut out = PartialAction::new(group, doc.set.clone());
        if out.index.len() != doc.set.len() {
            let dup = doc
                .set
                .iter()
                .enumerate()
                .find(|(i, n)| out.index[*n] != *i)
                .map(|(_, n)| n.clone())
                .unwrap_or_default();
            return Err(Error::DuplicateId { kind: "point", id: dup });
        }
        let point = |s: &String| out.point_index(s).ok_or_else(|| Error::UnknownId { kind: "point", id: s.clone() });
        let mut maps = BTreeMap::new();
        for (g, m) in &doc.maps {
            let e = out.group.parse(g)?;
            let map = m.iter().map(|(x, y)| Ok((point(x)?, point(y)?))).collect::<Result<BTreeMap<_, _>>>()?;
            if maps.insert(e, map).is_some() {
                return Err(Error::DuplicateId { kind: "group element", id: g.clone() });
            }
        }
        let mut domains = BTreeMap::new();
        for (g, d) in &doc.domains {
            let e = out.group.parse(g)?;
            domains.insert(e, d.iter().map(point).collect::<Result<BTreeSet<_>>>()?);
        }
        for (g, m) in &maps {
            domains.entry(g.clone()).or_insert_with(|| m.values().copied().collect());
        }
        domains.retain(|g, d| !d.is_empty() || maps.contains_key(g));
        out.maps = maps;
        out.domains = domains;
        Ok(out)
    }
}

/// All axiom violations; empty iff `θ` is a partial action.
///
/// Pairs `(g, h)` with `θ_g = ∅` or `θ_h = ∅` satisfy `θ_gθ_h ⊆ θ_{gh}` trivially,
/// so only the identity and the support are scanned.
pub fn validate_paction(theta: &PartialAction) -> Vec<Violation> {
    let mut out = Vec::new();
    let group = &theta.group;
    let n = theta.carrier.len();
    for g in theta.maps.keys().chain(theta.domains.keys()) {
        if !group.contains(g) {
            out.push(Violation::new(Axiom::Shape, format!("{g:?} is not an element of the group")));
            return out;
        }
    }
    let identity = group.identity();
    if let Some(d) = theta.domains.get(&identity) {
        if d.len() != n {
            out.push(Violation::new(Axiom::Identity, "X_1 is not the whole set"));
        }
    }
    if let Some(m) = theta.maps.get(&identity) {
        if m.len() != n || m.iter().any(|(x, y)| x != y) {
            out.push(Violation::new(Axiom::Identity, "θ_1 is not the identity map"));
        }
    }
    let keys: BTreeSet<&Elem> =
        theta.maps.keys().chain(theta.domains.keys()).filter(|g| !group.is_identity(g)).collect();
    for g in keys {
        let label = group.name(g);
        let empty = BTreeMap::new();
        let map = theta.maps.get(g).unwrap_or(&empty);
        let image: BTreeSet<usize> = map.values().copied().collect();
        if image.len() != map.len() {
            out.push(Violation::new(Axiom::NotABijection, format!("θ_{label} is not injective")));
        }
        if image != theta.domain(g) {
            out.push(Violation::new(Axiom::NotABijection, format!("θ_{label} does not map onto X_{label}")));
        }
        let keys: BTreeSet<usize> = map.keys().copied().collect();
        if keys != theta.domain(&group.inv(g)) {
            out.push(Violation::new(Axiom::DomainMismatch, format!("the domain of θ_{label} is not X_({label})⁻¹")));
        }
    }
    let acting = theta.acting_elements();
    for g in &acting {
        for h in &acting {
            let gh = group.mul(g, h);
            for x in 0..n {
                let Some(y) = theta.apply(h, x) else { continue };
                let Some(z) = theta.apply(g, y) else { continue };
                if theta.apply(&gh, x) != Some(z) {
                    out.push(Violation::new(
                        Axiom::Composition,
                        format!(
                            "θ_{}θ_{} ⊄ θ_{} at {}",
                            group.name(g),
                            group.name(h),
                            group.name(&gh),
                            theta.carrier[x]
                        ),
                    ));
                }
            }
        }
    }
    out
}

/// `(φ_0, φ_1): θ → ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaMorphism {
    pub phi0: Vec<usize>,
    pub phi1: GroupHom,
}

impl PaMorphism {
    pub fn identity(theta: &PartialAction) -> Self {
        PaMorphism { phi0: (0..theta.len()).collect(), phi1: GroupHom::identity(&theta.group) }
    }

    /// `outer ∘ inner` for `inner: θ → ρ` and `outer: ρ → σ`.
    pub fn compose(
        outer: &PaMorphism,
        inner: &PaMorphism,
        theta: &PartialAction,
        rho: &PartialAction,
        sigma: &PartialAction,
    ) -> Self {
        PaMorphism {
            phi0: inner.phi0.iter().map(|&x| outer.phi0[x]).collect(),
            phi1: GroupHom::compose(&outer.phi1, &inner.phi1, &theta.group, &rho.group, &sigma.group),
        }
    }

    pub fn to_doc(&self, theta: &PartialAction, rho: &PartialAction) -> PaMorphismDoc {
        PaMorphismDoc {
            phi0: self
                .phi0
                .iter()
                .enumerate()
                .map(|(x, &y)| (theta.carrier[x].clone(), rho.carrier[y].clone()))
                .collect(),
            phi1: self.phi1.to_doc(&theta.group, &rho.group),
        }
    }

    pub fn from_doc(doc: &PaMorphismDoc, theta: &PartialAction, rho: &PartialAction) -> Result<Self> {
        let phi0 = theta
            .carrier
            .iter()
            .map(|x| {
                let y = doc.phi0.get(x).ok_or_else(|| Error::Malformed(format!("no image for point {x}")))?;
                rho.point_index(y).ok_or_else(|| Error::UnknownId { kind: "point", id: y.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PaMorphism { phi0, phi1: GroupHom::from_doc(&doc.phi1, &theta.group, &rho.group)? })
    }
}

/// All violations of `φ_0(X_g) ⊆ Y_{φ_1(g)}` and `φ_0(θ_g(x)) = ρ_{φ_1(g)}(φ_0(x))`.
pub fn validate_morphism(phi: &PaMorphism, theta: &PartialAction, rho: &PartialAction) -> Vec<Violation> {
    if phi.phi0.len() != theta.len() || phi.phi0.iter().any(|&y| y >= rho.len()) {
        return vec![Violation::new(Axiom::Shape, "φ_0 does not map the carrier into the target carrier")];
    }
    let mut out = phi.phi1.violations(&theta.group, &rho.group);
    if !out.is_empty() {
        return out;
    }
    for g in theta.acting_elements() {
        let image = phi.phi1.apply(&rho.group, &g);
        let (gn, hn) = (theta.group.name(&g), rho.group.name(&image));
        for x in theta.domain(&g) {
            if !rho.in_domain(&image, phi.phi0[x]) {
                out.push(Violation::new(
                    Axiom::DomainCondition,
                    format!("φ_0({}) ∉ Y_{hn} for {} ∈ X_{gn}", theta.carrier[x], theta.carrier[x]),
                ));
            }
        }
        for x in 0..theta.len() {
            let Some(y) = theta.apply(&g, x) else { continue };
            if rho.apply(&image, phi.phi0[x]) != Some(phi.phi0[y]) {
                out.push(Violation::new(
                    Axiom::Equivariance,
                    format!("φ_0(θ_{gn}({})) ≠ ρ_{hn}(φ_0({}))", theta.carrier[x], theta.carrier[x]),
                ));
            }
        }
    }
    out
}

/// The subgroup generated by `{g : θ_g ≠ ∅}`.
pub fn reduced_group(theta: &PartialAction) -> Result<BTreeSet<usize>> {
    let g = theta.group.as_finite().ok_or(Error::NotEnumerable("reduction needs a finite-table group"))?;
    let gens = theta.support().map(|e| match e {
        Elem::Finite(i) => *i,
        _ => unreachable!("finite group with non-finite element"),
    });
    Ok(g.generated(gens))
}

/// `red θ`: `θ` restricted to the subgroup generated by its non-empty maps.
pub fn reduce(theta: &PartialAction) -> Result<PartialAction> {
    let members = reduced_group(theta)?;
    let (sub, embedding) = theta.group.finite()?.subgroup(&members);
    let back: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut out = PartialAction::new(sub, theta.carrier.clone());
    for (g, map) in theta.entries() {
        if let Elem::Finite(i) = g {
            out.set_map(Elem::Finite(back[i]), map.iter().map(|(&x, &y)| (x, y)));
        }
    }
    Ok(out)
}

pub fn is_reduced(theta: &PartialAction) -> Result<bool> {
    Ok(reduced_group(theta)?.len() == theta.group.finite()?.order())
}
