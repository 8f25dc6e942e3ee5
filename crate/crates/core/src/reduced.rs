//! Reduced partial actions with a given groupoid, through finite quotients of the universal group.

use crate::algebra::{Elem, FiniteGroup, GroupHom};
use crate::doc::QuotientHomDoc;
use crate::error::{Error, Result};
use crate::functors::{phi_object, psi_morphism, psi_object};
use crate::groupoid::{groupoid_iso_check, Groupoid};
use crate::paction::{is_reduced, validate_morphism, validate_paction, PaMorphism, PartialAction};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A surjection `G_Γ → S` given by the image of every morphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuotientHom {
    pub target: FiniteGroup,
    /// Indexed by morphism; identities map to the identity of `target`.
    pub images: Vec<usize>,
}

impl FiniteQuotientHom {
    /// Checks the presentation on every composable pair and that the images generate `target`.
    pub fn new(g: &Groupoid, target: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != g.morphism_count() || images.iter().any(|&s| s >= target.order()) {
            return Err(Error::Malformed("one image per morphism is required".into()));
        }
        for m in (0..g.morphism_count()).filter(|&m| g.is_identity(m)) {
            if images[m] != target.identity() {
                return Err(Error::PresentationViolated(g.morphism_name(m).into(), g.morphism_name(m).into()));
            }
        }
        for l in 0..g.morphism_count() {
            for r in (0..g.morphism_count()).filter(|&r| g.tgt(r) == g.src(l)) {
                let lr = g.compose(l, r).expect("endpoints match");
                if images[lr] != target.mul(images[l], images[r]) {
                    return Err(Error::PresentationViolated(g.morphism_name(l).into(), g.morphism_name(r).into()));
                }
            }
        }
        if target.generated(images.iter().copied()).len() != target.order() {
            return Err(Error::NotSurjective);
        }
        Ok(FiniteQuotientHom { target, images })
    }

    /// `[γ] ↦ gen^k` onto `C_n`, where `k` is the given exponent of each non-identity morphism.
    pub fn onto_cyclic(g: &Groupoid, n: usize, exponent: impl Fn(usize) -> i64) -> Result<Self> {
        let target = FiniteGroup::cyclic(n);
        let images = (0..g.morphism_count())
            .map(|m| if g.is_identity(m) { 0 } else { exponent(m).rem_euclid(n as i64) as usize })
            .collect();
        Self::new(g, target, images)
    }

    pub fn group_hom(&self) -> GroupHom {
        GroupHom::OnMorphisms(self.images.iter().map(|&s| Elem::Finite(s)).collect())
    }

    pub fn to_doc(&self, g: &Groupoid) -> QuotientHomDoc {
        let images = (0..g.morphism_count())
            .filter(|&m| !g.is_identity(m))
            .map(|m| (g.morphism_name(m).to_string(), self.target.name(self.images[m]).to_string()))
            .collect();
        QuotientHomDoc { target: self.target.to_doc(), images }
    }

    /// Images left out are filled in through inverses and composites of the given ones.
    pub fn from_doc(doc: &QuotientHomDoc, g: &Groupoid) -> Result<Self> {
        let target = FiniteGroup::from_doc(&doc.target)?;
        let mut images: Vec<Option<usize>> = vec![None; g.morphism_count()];
        for x in 0..g.object_count() {
            images[g.ident(x)] = Some(target.identity());
        }
        for (name, value) in &doc.images {
            let m = g.morphism_index(name).ok_or_else(|| Error::UnknownId { kind: "morphism", id: name.clone() })?;
            let s =
                target.index_of(value).ok_or_else(|| Error::UnknownId { kind: "group element", id: value.clone() })?;
            if images[m].is_some_and(|t| t != s) {
                return Err(Error::PresentationViolated(name.clone(), name.clone()));
            }
            images[m] = Some(s);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for l in 0..g.morphism_count() {
                let Some(sl) = images[l] else { continue };
                if images[g.inv(l)].is_none() {
                    images[g.inv(l)] = Some(target.inv(sl));
                    changed = true;
                }
                for r in (0..g.morphism_count()).filter(|&r| g.tgt(r) == g.src(l)) {
                    let lr = g.compose(l, r).expect("endpoints match");
                    if let (Some(sr), None) = (images[r], images[lr]) {
                        images[lr] = Some(target.mul(sl, sr));
                        changed = true;
                    }
                }
            }
        }
        let images = images
            .iter()
            .enumerate()
            .map(|(m, s)| {
                s.ok_or_else(|| Error::Malformed(format!("no image determined for `{}`", g.morphism_name(m))))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, target, images)
    }
}

/// No non-identity morphism class lies in the kernel.
pub fn kernel_condition(g: &Groupoid, phi: &FiniteQuotientHom) -> bool {
    (0..g.morphism_count()).all(|m| g.is_identity(m) || phi.images[m] != phi.target.identity())
}

/// The partial action induced by a quotient, with the verified morphism from `Φ(Γ)`.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub action: PartialAction,
    /// `(id, φ): Φ(Γ) → action`; its `Ψ`-image is an isomorphism.
    pub from_universal: PaMorphism,
}

impl InducedAction {
    /// Every `D_h` is the whole carrier.
    pub fn is_global(&self) -> bool {
        let group = self.action.group();
        let elems = group.elements().expect("finite target");
        elems.iter().all(|h| group.is_identity(h) || self.action.domain(h).len() == self.action.len())
    }
}

/// `D_h = {t(γ) : φ[γ] = h}` and `α_h(s(γ)) = t(γ)`.
pub fn induce_action(g: &Groupoid, phi: &FiniteQuotientHom) -> Result<InducedAction> {
    let s = &phi.target;
    let mut maps: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); s.order()];
    let mut inverse_maps: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); s.order()];
    for m in (0..g.morphism_count()).filter(|&m| !g.is_identity(m)) {
        let h = phi.images[m];
        let (x, y) = (g.src(m), g.tgt(m));
        let ill_defined = || Error::IllDefined(g.morphism_name(m).into(), s.name(h).into());
        if h == s.identity() || maps[h].insert(x, y).is_some_and(|z| z != y) {
            return Err(ill_defined());
        }
        if inverse_maps[h].insert(y, x).is_some_and(|z| z != x) {
            return Err(ill_defined());
        }
    }
    let mut action = PartialAction::new(s.clone(), g.object_names().to_vec());
    for (h, map) in maps.into_iter().enumerate().filter(|(h, map)| *h != s.identity() && !map.is_empty()) {
        action.set_map(Elem::Finite(h), map);
    }
    let image: BTreeSet<usize> = phi.images.iter().copied().collect();
    assert!(action.support().all(|h| matches!(h, Elem::Finite(i) if image.contains(i))));

    let universal = phi_object(g);
    let from_universal = PaMorphism { phi0: (0..g.object_count()).collect(), phi1: phi.group_hom() };
    let mut violations = validate_paction(&action);
    violations.extend(validate_morphism(&from_universal, &universal, &action));
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let (psi_u, psi_a) = (psi_object(&universal), psi_object(&action));
    let psi_map = psi_morphism(&from_universal, &psi_u, &psi_a)?;
    if !groupoid_iso_check(&psi_map, &psi_u.groupoid, &psi_a.groupoid) || !is_reduced(&action)? {
        return Err(Error::NotAnIsomorphism);
    }
    Ok(InducedAction { action, from_universal })
}

/// Position of `ker φ1` relative to `ker φ2`; `Le` means `ker φ1 ⊆ ker φ2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelOrder {
    Equal,
    Le,
    Ge,
    Incomparable,
}

impl KernelOrder {
    pub fn symbol(self) -> &'static str {
        match self {
            KernelOrder::Equal => "=",
            KernelOrder::Le => "<=",
            KernelOrder::Ge => ">=",
            KernelOrder::Incomparable => "incomparable",
        }
    }
}

/// The homomorphism `S1 → S2` sending `φ1[γ] ↦ φ2[γ]`, if one exists.
///
/// Built by breadth-first search over the Cayley graph of `S1` on the generator images, so every
/// element is reached by a word of length below `|S1|`, and then checked on every edge.
pub fn induced_map(from: &FiniteQuotientHom, to: &FiniteQuotientHom) -> Option<Vec<usize>> {
    let (s1, s2) = (&from.target, &to.target);
    let gens: BTreeSet<(usize, usize)> = from.images.iter().copied().zip(to.images.iter().copied()).collect();
    let mut map = vec![None; s1.order()];
    map[s1.identity()] = Some(s2.identity());
    let mut queue = VecDeque::from([s1.identity()]);
    while let Some(a) = queue.pop_front() {
        let fa = map[a].expect("queued elements are mapped");
        for &(g1, g2) in &gens {
            let (b, fb) = (s1.mul(a, g1), s2.mul(fa, g2));
            match map[b] {
                Some(existing) if existing != fb => return None,
                Some(_) => {}
                None => {
                    map[b] = Some(fb);
                    queue.push_back(b);
                }
            }
        }
    }
    map.into_iter().collect()
}

pub fn compare_reduced(phi1: &FiniteQuotientHom, phi2: &FiniteQuotientHom) -> KernelOrder {
    match (induced_map(phi1, phi2).is_some(), induced_map(phi2, phi1).is_some()) {
        (true, true) => KernelOrder::Equal,
        (true, false) => KernelOrder::Le,
        (false, true) => KernelOrder::Ge,
        (false, false) => KernelOrder::Incomparable,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityReport {
    /// Indices of candidates whose kernel strictly contains that of `φ`.
    pub dominators: Vec<usize>,
    pub global: bool,
    /// A global induced action has no dominator.
    pub consistent: bool,
}

pub fn maximality_certificate(
    g: &Groupoid,
    phi: &FiniteQuotientHom,
    candidates: &[FiniteQuotientHom],
) -> Result<MaximalityReport> {
    let dominators = candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| compare_reduced(phi, c) == KernelOrder::Le)
        .map(|(i, _)| i)
        .collect::<Vec<_>>();
    let global = induce_action(g, phi)?.is_global();
    let consistent = !global || dominators.is_empty();
    Ok(MaximalityReport { dominators, global, consistent })
}
