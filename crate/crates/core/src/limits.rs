//! Finite limits and colimits of partial actions.

use crate::algebra::{Elem, FiniteGroup, FreeProduct, Group, GroupHom, Syllable};
use crate::congruence::{congruence_closure, factor_through, quotient, Congruence};
use crate::error::{Error, Result};
use crate::functors::psi_object;
use crate::groupoid::{groupoid_iso_check, realize_connected, Groupoid, GroupoidMorphism};
use crate::paction::{validate_morphism, validate_paction, PaMorphism, PartialAction};
use crate::violation::{Axiom, Violation};
use std::collections::{BTreeSet, HashMap};

/// The trivial group acting on the empty set.
pub fn initial() -> PartialAction {
    PartialAction::new(FiniteGroup::trivial(), vec![])
}

/// The trivial group acting on one point.
pub fn terminal() -> PartialAction {
    PartialAction::new(FiniteGroup::trivial(), vec!["*".into()])
}

fn finite_index(g: &Elem) -> usize {
    match g {
        Elem::Finite(i) => *i,
        _ => panic!("expected an element of a finite-table group"),
    }
}

fn ensure_valid(theta: &PartialAction, arrows: &[(&PaMorphism, &PartialAction, &PartialAction)]) -> Result<()> {
    let mut violations = validate_paction(theta);
    for (phi, from, to) in arrows {
        violations.extend(validate_morphism(phi, from, to));
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(violations))
    }
}

/// Mixed-radix coordinates, first factor most significant.
struct Radix(Vec<usize>);

impl Radix {
    fn total(&self) -> usize {
        self.0.iter().product()
    }

    fn split(&self, mut i: usize) -> Vec<usize> {
        let mut parts = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            parts[k] = i % self.0[k];
            i /= self.0[k];
        }
        parts
    }

    fn join(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.0).fold(0, |acc, (p, s)| acc * s + p)
    }
}

/// The product with its projections.
pub struct Product {
    pub action: PartialAction,
    pub projections: Vec<PaMorphism>,
}

/// Componentwise product over the direct product of the groups.
pub fn product(factors: &[&PartialAction]) -> Result<Product> {
    let groups: Vec<&FiniteGroup> = factors.iter().map(|t| t.group().finite()).collect::<Result<_>>()?;
    let group = FiniteGroup::direct_product(&groups);
    let elems = Radix(groups.iter().map(|g| g.order()).collect());
    let points = Radix(factors.iter().map(|t| t.len()).collect());
    let names = (0..points.total())
        .map(|i| {
            let parts = points.split(i);
            format!("({})", parts.iter().zip(factors).map(|(&p, t)| t.point_name(p)).collect::<Vec<_>>().join(","))
        })
        .collect();
    let mut action = PartialAction::new(group.clone(), names);
    for g in group.elements().filter(|&g| g != group.identity()) {
        let gs = elems.split(g);
        let pairs: Vec<(usize, usize)> = (0..points.total())
            .filter_map(|x| {
                let xs = points.split(x);
                let ys = xs
                    .iter()
                    .zip(&gs)
                    .zip(factors)
                    .map(|((&xi, &gi), t)| t.apply(&Elem::Finite(gi), xi))
                    .collect::<Option<Vec<_>>>()?;
                Some((x, points.join(&ys)))
            })
            .collect();
        action.set_map(Elem::Finite(g), pairs);
    }
    let projections: Vec<PaMorphism> = (0..factors.len())
        .map(|i| PaMorphism {
            phi0: (0..points.total()).map(|x| points.split(x)[i]).collect(),
            phi1: GroupHom::Table(group.elements().map(|g| Elem::Finite(elems.split(g)[i])).collect()),
        })
        .collect();
    let arrows: Vec<_> = projections.iter().zip(factors).map(|(p, t)| (p, &action, *t)).collect();
    ensure_valid(&action, &arrows)?;
    Ok(Product { action, projections })
}

/// The unique `m: σ → ∏θ^i` with `π_i ∘ m = cone_i`.
pub fn product_mediator(
    sigma: &PartialAction,
    cone: &[PaMorphism],
    factors: &[&PartialAction],
    prod: &Product,
) -> Result<PaMorphism> {
    let groups: Vec<&FiniteGroup> = factors.iter().map(|t| t.group().finite()).collect::<Result<_>>()?;
    let elems = Radix(groups.iter().map(|g| g.order()).collect());
    let points = Radix(factors.iter().map(|t| t.len()).collect());
    let mediator = PaMorphism {
        phi0: (0..sigma.len()).map(|x| points.join(&cone.iter().map(|c| c.phi0[x]).collect::<Vec<_>>())).collect(),
        phi1: GroupHom::from_fn(sigma.group(), |g| {
            let parts: Vec<usize> =
                cone.iter().zip(factors).map(|(c, t)| finite_index(&c.phi1.apply(t.group(), g))).collect();
            Elem::Finite(elems.join(&parts))
        }),
    };
    ensure_valid(sigma, &[(&mediator, sigma, &prod.action)])?;
    for ((c, p), t) in cone.iter().zip(&prod.projections).zip(factors) {
        if PaMorphism::compose(p, &mediator, sigma, &prod.action, t) != *c {
            return Err(Error::Invalid(vec![Violation::new(
                Axiom::Composition,
                "cone does not factor through the product",
            )]));
        }
    }
    Ok(mediator)
}

fn check_parallel(phi: &PaMorphism, psi: &PaMorphism, theta: &PartialAction, rho: &PartialAction) -> Result<()> {
    for (name, m) in [("φ", phi), ("ψ", psi)] {
        let v = validate_morphism(m, theta, rho);
        if v.iter().any(|v| v.axiom == Axiom::Shape) {
            return Err(Error::NotParallel(format!("{name} does not go from the given source to the given target")));
        }
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
    }
    Ok(())
}

/// The equalizer with its inclusion.
pub struct Equalizer {
    pub action: PartialAction,
    pub inclusion: PaMorphism,
}

/// `E = {g : φ_1(g) = ψ_1(g)}` acting on `Z = {x : φ_0(x) = ψ_0(x)}` with `Z_g = X_g ∩ Z`.
pub fn equalizer(phi: &PaMorphism, psi: &PaMorphism, theta: &PartialAction, rho: &PartialAction) -> Result<Equalizer> {
    check_parallel(phi, psi, theta, rho)?;
    let group = theta.group().finite()?;
    let agree: BTreeSet<usize> = group
        .elements()
        .filter(|&g| phi.phi1.apply(rho.group(), &Elem::Finite(g)) == psi.phi1.apply(rho.group(), &Elem::Finite(g)))
        .collect();
    let (sub, embedding) = group.subgroup(&agree);
    let points: Vec<usize> = (0..theta.len()).filter(|&x| phi.phi0[x] == psi.phi0[x]).collect();
    let pos: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut action = PartialAction::new(sub.clone(), points.iter().map(|&x| theta.point_name(x).to_string()).collect());
    for (e, &g) in embedding.iter().enumerate().filter(|&(e, _)| e != sub.identity()) {
        let pairs: Vec<(usize, usize)> =
            points.iter().filter_map(|&x| Some((pos[&x], *pos.get(&theta.apply(&Elem::Finite(g), x)?)?))).collect();
        action.set_map(Elem::Finite(e), pairs);
    }
    let inclusion =
        PaMorphism { phi0: points, phi1: GroupHom::Table(embedding.iter().map(|&g| Elem::Finite(g)).collect()) };
    ensure_valid(&action, &[(&inclusion, &action, theta)])?;
    Ok(Equalizer { action, inclusion })
}

/// The unique `m: σ → E` with `ι ∘ m = fork`.
pub fn equalizer_mediator(
    sigma: &PartialAction,
    fork: &PaMorphism,
    theta: &PartialAction,
    eq: &Equalizer,
) -> Result<PaMorphism> {
    let back0: HashMap<usize, usize> = eq.inclusion.phi0.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let back1: HashMap<Elem, usize> = match &eq.inclusion.phi1 {
        GroupHom::Table(t) => t.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect(),
        _ => unreachable!("equalizers are built over finite groups"),
    };
    let not_a_fork =
        || Error::Invalid(vec![Violation::new(Axiom::Equivariance, "the fork does not land in the equalizer")]);
    let phi0 = fork.phi0.iter().map(|x| back0.get(x).copied().ok_or_else(not_a_fork)).collect::<Result<Vec<_>>>()?;
    let mut missing = false;
    let phi1 = GroupHom::from_fn(sigma.group(), |g| match back1.get(&fork.phi1.apply(theta.group(), g)) {
        Some(&i) => Elem::Finite(i),
        None => {
            missing = true;
            eq.action.group().identity()
        }
    });
    if missing {
        return Err(not_a_fork());
    }
    let mediator = PaMorphism { phi0, phi1 };
    ensure_valid(sigma, &[(&mediator, sigma, &eq.action)])?;
    Ok(mediator)
}

/// The coproduct with its injections.
pub struct Coproduct {
    pub action: PartialAction,
    pub injections: Vec<PaMorphism>,
    offsets: Vec<usize>,
}

/// Disjoint union over the free product; `X_g = X^i_g` for `g` in factor `i`, empty for mixed words.
pub fn coproduct(factors: &[&PartialAction]) -> Result<Coproduct> {
    let groups: Vec<FiniteGroup> = factors.iter().map(|t| t.group().finite().cloned()).collect::<Result<_>>()?;
    let group = Group::from(FreeProduct::new(groups.clone()));
    let mut names = Vec::new();
    let mut offsets = Vec::new();
    for (i, t) in factors.iter().enumerate() {
        offsets.push(names.len());
        names.extend(t.carrier().iter().map(|x| format!("{i}:{x}")));
    }
    let mut action = PartialAction::new(group.clone(), names);
    for (i, t) in factors.iter().enumerate() {
        for (g, map) in t.entries() {
            let syllable = Elem::Free(vec![Syllable { factor: i, elem: finite_index(g) }]);
            action.set_map(syllable, map.iter().map(|(&x, &y)| (x + offsets[i], y + offsets[i])));
        }
    }
    let injections: Vec<PaMorphism> = factors
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let fg = &groups[i];
            PaMorphism {
                phi0: (0..t.len()).map(|x| x + offsets[i]).collect(),
                phi1: GroupHom::Table(
                    fg.elements()
                        .map(|e| {
                            Elem::Free(if e == fg.identity() { vec![] } else { vec![Syllable { factor: i, elem: e }] })
                        })
                        .collect(),
                ),
            }
        })
        .collect();
    let arrows: Vec<_> = injections.iter().zip(factors).map(|(j, t)| (j, *t, &action)).collect();
    ensure_valid(&action, &arrows)?;
    Ok(Coproduct { action, injections, offsets })
}

/// The unique `m: ⊔θ^i → σ` with `m ∘ ι_i = cocone_i`.
pub fn coproduct_mediator(
    sigma: &PartialAction,
    cocone: &[PaMorphism],
    factors: &[&PartialAction],
    co: &Coproduct,
) -> Result<PaMorphism> {
    let mut phi0 = vec![0; co.action.len()];
    for (i, c) in cocone.iter().enumerate() {
        for (x, &y) in c.phi0.iter().enumerate() {
            phi0[co.offsets[i] + x] = y;
        }
    }
    let per_factor = cocone
        .iter()
        .zip(factors)
        .map(|(c, t)| {
            let g = t.group().finite()?;
            Ok(g.elements().map(|e| c.phi1.apply(sigma.group(), &Elem::Finite(e))).collect())
        })
        .collect::<Result<Vec<Vec<Elem>>>>()?;
    let mediator = PaMorphism { phi0, phi1: GroupHom::PerFactor(per_factor) };
    ensure_valid(sigma, &[(&mediator, &co.action, sigma)])?;
    Ok(mediator)
}

/// The coequalizer with its projection and the congruence it quotients by.
pub struct Coequalizer {
    pub action: PartialAction,
    pub projection: PaMorphism,
    pub congruence: Congruence,
}

/// Quotient of `ρ` by the least congruence identifying `φ` and `ψ`.
pub fn coequalizer(
    phi: &PaMorphism,
    psi: &PaMorphism,
    theta: &PartialAction,
    rho: &PartialAction,
) -> Result<Coequalizer> {
    check_parallel(phi, psi, theta, rho)?;
    let group = rho.group().finite()?;
    let pairs: Vec<(usize, usize)> = phi.phi0.iter().zip(&psi.phi0).map(|(&a, &b)| (a, b)).collect();
    let kernel: Vec<usize> = theta
        .group()
        .generators()
        .iter()
        .map(|g| {
            let (a, b) = (phi.phi1.apply(rho.group(), g), psi.phi1.apply(rho.group(), g));
            group.mul(finite_index(&a), group.inv(finite_index(&b)))
        })
        .collect();
    let congruence = congruence_closure(rho, &pairs, &kernel)?;
    let (action, projection) = quotient(rho, &congruence)?;
    Ok(Coequalizer { action, projection, congruence })
}

/// The unique `m` with `m ∘ π = cocone`, for a cocone with `cocone ∘ φ = cocone ∘ ψ`.
pub fn coequalizer_mediator(
    sigma: &PartialAction,
    cocone: &PaMorphism,
    rho: &PartialAction,
    co: &Coequalizer,
) -> Result<PaMorphism> {
    let (_, bar) = factor_through(cocone, rho, sigma, &co.congruence)?;
    Ok(bar)
}

/// A partial action whose groupoid is `Γ`: the coproduct of global realizations of its components,
/// with the verified isomorphism `Ψ(θ) → Γ`.
pub fn groupoid_to_paction(g: &Groupoid) -> Result<(PartialAction, GroupoidMorphism)> {
    let components = g.connected_components();
    let realizations = components.iter().map(|c| realize_connected(&c.groupoid, 0)).collect::<Result<Vec<_>>>()?;
    let globals: Vec<PartialAction> = components
        .iter()
        .zip(&realizations)
        .map(|(c, r)| PartialAction::global(&r.group, c.groupoid.object_names().to_vec(), |e, x| r.act(e, x)))
        .collect();
    let co = coproduct(&globals.iter().collect::<Vec<_>>())?;
    let psi = psi_object(&co.action);
    let mut f0 = vec![0; co.action.len()];
    for (i, c) in components.iter().enumerate() {
        for (x, &parent) in c.objects.iter().enumerate() {
            f0[co.offsets[i] + x] = parent;
        }
    }
    let component_of = |x: usize| co.offsets.iter().rposition(|&o| o <= x).expect("offsets start at 0");
    let f1 = psi
        .triples
        .iter()
        .map(|(_, e, x)| {
            let i = component_of(*x);
            let local = x - co.offsets[i];
            let n = components[i].groupoid.object_count();
            let elem = match e {
                Elem::Free(w) if w.is_empty() => realizations[i].group.identity(),
                Elem::Free(w) => w[0].elem,
                _ => unreachable!("coproducts act through free products"),
            };
            components[i].morphisms[realizations[i].witness_iso.f1[elem * n + local]]
        })
        .collect();
    let witness = GroupoidMorphism { f0, f1 };
    if !groupoid_iso_check(&witness, &psi.groupoid, g) {
        return Err(Error::NotAnIsomorphism);
    }
    Ok((co.action, witness))
}
