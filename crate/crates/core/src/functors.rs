//! The functors between partial actions and groupoids, and the comparison maps between them.

use crate::algebra::{Elem, Group, GroupHom};
use crate::doc::GroupoidActionDoc;
use crate::error::{Error, Result};
use crate::fwords::PiValue;
use crate::groupoid::{groupoid_iso_check, invert_map, Groupoid, GroupoidMorphism};
use crate::paction::{validate_morphism, validate_paction, PaMorphism, PartialAction};
use crate::ugroup::{self, UWord};
use crate::violation::{Axiom, Violation};
use std::collections::HashMap;

/// The partial action groupoid: morphisms are triples `(θ_g(x), g, x)`.
#[derive(Clone, Debug)]
pub struct PaGroupoid {
    pub groupoid: Groupoid,
    pub group: Group,
    /// `(y, g, x)` per morphism index.
    pub triples: Vec<(usize, Elem, usize)>,
    index: HashMap<(Elem, usize), usize>,
}

impl PaGroupoid {
    /// The morphism `(θ_g(x), g, x)`, if `x ∈ X_{g⁻¹}`.
    pub fn morphism(&self, g: &Elem, x: usize) -> Option<usize> {
        self.index.get(&(g.clone(), x)).copied()
    }
}

/// `Ψ(θ)`. Identities `(x, 1, x)` come first, in carrier order.
pub fn psi_object(theta: &PartialAction) -> PaGroupoid {
    let group = theta.group().clone();
    let mut triples = Vec::new();
    for g in theta.acting_elements() {
        for x in 0..theta.len() {
            if let Some(y) = theta.apply(&g, x) {
                triples.push((y, g.clone(), x));
            }
        }
    }
    let index: HashMap<(Elem, usize), usize> =
        triples.iter().enumerate().map(|(i, (_, g, x))| ((g.clone(), *x), i)).collect();
    let name = |(y, g, x): &(usize, Elem, usize)| {
        format!("({},{},{})", theta.point_name(*y), group.name(g), theta.point_name(*x))
    };
    let morphisms = triples.iter().map(|t| (name(t), t.2, t.0)).collect();
    let identity = group.identity();
    let groupoid = Groupoid::from_parts(
        theta.carrier().to_vec(),
        morphisms,
        |l, r| {
            let ((_, g, y), (y2, h, x)) = (&triples[l], &triples[r]);
            if y != y2 {
                return None;
            }
            index.get(&(group.mul(g, h), *x)).copied()
        },
        (0..theta.len()).map(|x| index[&(identity.clone(), x)]).collect(),
        triples
            .iter()
            .map(|(y, g, x)| index.get(&(group.inv(g), *y)).copied().unwrap_or(index[&(identity.clone(), *x)]))
            .collect(),
    );
    PaGroupoid { groupoid, group, triples, index }
}

/// `Ψ(φ)(y, g, x) = (φ_0(y), φ_1(g), φ_0(x))`.
pub fn psi_morphism(phi: &PaMorphism, source: &PaGroupoid, target: &PaGroupoid) -> Result<GroupoidMorphism> {
    let f1 = source
        .triples
        .iter()
        .map(|(_, g, x)| {
            let h = phi.phi1.apply(&target.group, g);
            target.morphism(&h, phi.phi0[*x]).ok_or_else(|| {
                Error::Invalid(vec![Violation::new(
                    Axiom::DomainCondition,
                    format!("no image morphism for ({}, {})", source.group.name(g), source.groupoid.object_name(*x)),
                )])
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupoidMorphism { f0: phi.phi0.clone(), f1 })
}

/// Whether a morphism with bijective components is an isomorphism, i.e. its inverse pair is a morphism.
/// Cross-checked against the groupoid-level criterion.
pub fn iso_criterion(phi: &PaMorphism, theta: &PartialAction, rho: &PartialAction) -> Result<bool> {
    let back0 = invert_map(&phi.phi0, rho.len()).ok_or_else(|| Error::NotBijective("φ_0 is not a bijection".into()))?;
    let back1 = phi.phi1.inverse(theta.group(), rho.group())?;
    let inverse = PaMorphism { phi0: back0, phi1: back1 };
    let direct = validate_morphism(phi, theta, rho).is_empty() && validate_morphism(&inverse, rho, theta).is_empty();
    let (source, target) = (psi_object(theta), psi_object(rho));
    let via_groupoids =
        psi_morphism(phi, &source, &target).is_ok_and(|f| groupoid_iso_check(&f, &source.groupoid, &target.groupoid));
    assert_eq!(direct, via_groupoids, "isomorphism criteria disagree");
    Ok(direct)
}

/// `Φ(Γ)`: `θ^Γ` over the universal group, with `θ_{⌈γ⌉}(s(γ)) = t(γ)`.
pub fn phi_object(g: &Groupoid) -> PartialAction {
    let mut theta = PartialAction::new(Group::universal(g.clone()), g.object_names().to_vec());
    for m in (0..g.morphism_count()).filter(|&m| !g.is_identity(m)) {
        theta.set_map(Elem::Universal(UWord(vec![m])), [(g.src(m), g.tgt(m))]);
    }
    theta
}

/// `Φ(f) = (f_0, φ_f)` with `φ_f(⌈γ⌉) = ⌈f_1(γ)⌉`.
pub fn phi_morphism(f: &GroupoidMorphism, target: &Groupoid) -> PaMorphism {
    let images = f.f1.iter().map(|&m| Elem::Universal(ugroup::letter(target, m))).collect();
    PaMorphism { phi0: f.f0.clone(), phi1: GroupHom::OnMorphisms(images) }
}

/// `η_Γ: Ψ(Φ(Γ)) → Γ` with its inverse, both verified.
#[derive(Clone, Debug)]
pub struct Eta {
    pub psi_phi: PaGroupoid,
    pub forward: GroupoidMorphism,
    pub backward: GroupoidMorphism,
}

pub fn eta(g: &Groupoid) -> Result<Eta> {
    let psi_phi = psi_object(&phi_object(g));
    let f1 = psi_phi
        .triples
        .iter()
        .map(|(_, e, x)| match e {
            Elem::Universal(w) => match ugroup::psi_of(w) {
                PiValue::Morphism(m) => Ok(m),
                PiValue::IdentityMap => Ok(g.ident(*x)),
                PiValue::Empty => Err(Error::NotAnIsomorphism),
            },
            _ => unreachable!("universal partial action over a non-universal group"),
        })
        .collect::<Result<Vec<_>>>()?;
    let forward = GroupoidMorphism { f0: (0..g.object_count()).collect(), f1 };
    let identity = psi_phi.group.identity();
    let backward_f1 = (0..g.morphism_count())
        .map(|m| {
            let e = if g.is_identity(m) { identity.clone() } else { Elem::Universal(UWord(vec![m])) };
            psi_phi.morphism(&e, g.src(m)).ok_or(Error::NotAnIsomorphism)
        })
        .collect::<Result<Vec<_>>>()?;
    let backward = GroupoidMorphism { f0: (0..g.object_count()).collect(), f1: backward_f1 };
    if !groupoid_iso_check(&forward, &psi_phi.groupoid, g) || forward.inverse(g).as_ref() != Some(&backward) {
        return Err(Error::NotAnIsomorphism);
    }
    Ok(Eta { psi_phi, forward, backward })
}

/// `η_{Γ'} ∘ Ψ(Φ(f)) = f ∘ η_Γ`.
pub fn eta_naturality(f: &GroupoidMorphism, source: &Groupoid, target: &Groupoid) -> Result<bool> {
    let (eta_s, eta_t) = (eta(source)?, eta(target)?);
    let psi_phi_f = psi_morphism(&phi_morphism(f, target), &eta_s.psi_phi, &eta_t.psi_phi)?;
    Ok(eta_t.forward.after(&psi_phi_f) == f.after(&eta_s.forward))
}

/// The morphism `Φ(Γ) → θ` determined by an isomorphism `f: Γ → Ψ(θ)`.
pub fn universal_morphism(
    g: &Groupoid,
    theta: &PartialAction,
    psi_theta: &PaGroupoid,
    f: &GroupoidMorphism,
) -> Result<PaMorphism> {
    if !groupoid_iso_check(f, g, &psi_theta.groupoid) {
        return Err(Error::NotAnIsomorphism);
    }
    let images = f.f1.iter().map(|&m| psi_theta.triples[m].1.clone()).collect();
    let phi = PaMorphism { phi0: f.f0.clone(), phi1: GroupHom::OnMorphisms(images) };
    let universal = phi_object(g);
    let violations = validate_morphism(&phi, &universal, theta);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let eta_g = eta(g)?;
    let psi_phi = psi_morphism(&phi, &eta_g.psi_phi, psi_theta)?;
    if psi_phi != f.after(&eta_g.forward) {
        return Err(Error::Invalid(vec![Violation::new(Axiom::Composition, "f ∘ η does not equal Ψ(φ)")]));
    }
    Ok(phi)
}

/// A groupoid acting on a set through a momentum map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidAction {
    pub set: Vec<String>,
    /// Object of each point.
    pub momentum: Vec<usize>,
    /// `Λ(γ, y)`, present iff `s(γ) = μ(y)`.
    pub act: HashMap<(usize, usize), usize>,
}

impl GroupoidAction {
    pub fn violations(&self, g: &Groupoid) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.momentum.len() != self.set.len() || self.momentum.iter().any(|&x| x >= g.object_count()) {
            out.push(Violation::new(Axiom::Shape, "momentum does not map the set to objects"));
            return out;
        }
        for (&(m, y), &z) in &self.act {
            if m >= g.morphism_count() || y >= self.set.len() || z >= self.set.len() {
                out.push(Violation::new(Axiom::Shape, "action entry out of range"));
                return out;
            }
            if g.src(m) != self.momentum[y] {
                out.push(Violation::new(
                    Axiom::ComposeDomain,
                    format!("Λ({}, {}) given but s ≠ μ", g.morphism_name(m), self.set[y]),
                ));
            }
            if self.momentum[z] != g.tgt(m) {
                out.push(Violation::new(
                    Axiom::Endpoints,
                    format!("μ(Λ({}, {})) ≠ t", g.morphism_name(m), self.set[y]),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for y in 0..self.set.len() {
            for m in (0..g.morphism_count()).filter(|&m| g.src(m) == self.momentum[y]) {
                if !self.act.contains_key(&(m, y)) {
                    out.push(Violation::new(
                        Axiom::Totality,
                        format!("Λ({}, {}) is undefined", g.morphism_name(m), self.set[y]),
                    ));
                }
            }
            if self.act.get(&(g.ident(self.momentum[y]), y)) != Some(&y) {
                out.push(Violation::new(Axiom::Identity, format!("the identity moves {}", self.set[y])));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (&(b, y), &z) in &self.act {
            for a in (0..g.morphism_count()).filter(|&a| g.src(a) == g.tgt(b)) {
                let ab = g.compose(a, b).expect("composable");
                if self.act.get(&(a, z)) != self.act.get(&(ab, y)) {
                    out.push(Violation::new(
                        Axiom::Composition,
                        format!(
                            "Λ_{}Λ_{} ≠ Λ_{} at {}",
                            g.morphism_name(a),
                            g.morphism_name(b),
                            g.morphism_name(ab),
                            self.set[y]
                        ),
                    ));
                }
            }
        }
        out
    }

    pub fn to_doc(&self, g: &Groupoid) -> GroupoidActionDoc {
        let mut action: Vec<[String; 3]> = self
            .act
            .iter()
            .filter(|((m, _), _)| !g.is_identity(*m))
            .map(|(&(m, y), &z)| [g.morphism_name(m).to_string(), self.set[y].clone(), self.set[z].clone()])
            .collect();
        action.sort();
        GroupoidActionDoc {
            set: self.set.clone(),
            momentum: self
                .momentum
                .iter()
                .enumerate()
                .map(|(y, &x)| (self.set[y].clone(), g.object_name(x).to_string()))
                .collect(),
            action,
        }
    }

    /// Reads a document; identity rows that are omitted are filled in.
    pub fn from_doc(doc: &GroupoidActionDoc, g: &Groupoid) -> Result<Self> {
        let point = |s: &String| {
            doc.set.iter().position(|p| p == s).ok_or_else(|| Error::UnknownId { kind: "point", id: s.clone() })
        };
        let momentum = doc
            .set
            .iter()
            .map(|y| {
                let x = doc.momentum.get(y).ok_or_else(|| Error::Malformed(format!("no momentum for {y}")))?;
                g.object_index(x).ok_or_else(|| Error::UnknownId { kind: "object", id: x.clone() })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut act = HashMap::new();
        for [m, y, z] in &doc.action {
            let mi = g.morphism_index(m).ok_or_else(|| Error::UnknownId { kind: "morphism", id: m.clone() })?;
            if act.insert((mi, point(y)?), point(z)?).is_some() {
                return Err(Error::DuplicateId { kind: "action row", id: format!("{m} {y}") });
            }
        }
        for (y, &x) in momentum.iter().enumerate() {
            act.entry((g.ident(x), y)).or_insert(y);
        }
        Ok(GroupoidAction { set: doc.set.clone(), momentum, act })
    }
}

/// The partial action `θ̂` on `Y` with `Y_g = μ⁻¹(X_g)` and `θ̂_g(y) = Λ(f⁻¹(θ_g(μy), g, μy), y)`,
/// together with the morphism `(μ, id): θ̂ → θ`.
pub fn lift_groupoid_action(
    g: &Groupoid,
    theta: &PartialAction,
    psi_theta: &PaGroupoid,
    f: &GroupoidMorphism,
    action: &GroupoidAction,
) -> Result<(PartialAction, PaMorphism)> {
    let violations = action.violations(g);
    if !violations.is_empty() {
        return Err(Error::InvalidGroupoidAction(violations));
    }
    if !groupoid_iso_check(f, g, &psi_theta.groupoid) {
        return Err(Error::NotAnIsomorphism);
    }
    let back = f.inverse(&psi_theta.groupoid).ok_or(Error::NotAnIsomorphism)?;
    let mu: Vec<usize> = action.momentum.iter().map(|&x| f.f0[x]).collect();
    let mut lifted = PartialAction::new(theta.group().clone(), action.set.clone());
    for e in theta.support() {
        let pairs: Vec<(usize, usize)> = (0..action.set.len())
            .filter_map(|y| {
                let m = psi_theta.morphism(e, mu[y])?;
                Some((y, action.act[&(back.f1[m], y)]))
            })
            .collect();
        lifted.set_map(e.clone(), pairs);
    }
    let violations = validate_paction(&lifted);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let morphism = PaMorphism { phi0: mu, phi1: GroupHom::identity(theta.group()) };
    let violations = validate_morphism(&morphism, &lifted, theta);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    Ok((lifted, morphism))
}
