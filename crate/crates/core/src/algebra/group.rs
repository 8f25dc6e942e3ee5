use super::finite::FiniteGroup;
use super::free_product::{FreeProduct, Syllable};
use crate::doc::GroupDoc;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::ugroup::{self, UWord};
use crate::violation::{Axiom, Violation};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// An element of some [`Group`]; the variant always matches the group's kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Finite(usize),
    Free(Vec<Syllable>),
    Universal(UWord),
}

/// A group usable as the acting group of a partial action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Finite(Arc<FiniteGroup>),
    FreeProduct(Arc<FreeProduct>),
    /// The universal group of a groupoid, elements in normal form.
    Universal(Arc<Groupoid>),
}

impl From<FiniteGroup> for Group {
    fn from(g: FiniteGroup) -> Self {
        Group::Finite(Arc::new(g))
    }
}

impl From<FreeProduct> for Group {
    fn from(g: FreeProduct) -> Self {
        Group::FreeProduct(Arc::new(g))
    }
}

fn mismatch(group: &Group, e: &Elem) -> ! {
    panic!("element {e:?} does not belong to a {} group", group.kind())
}

impl Group {
    pub fn universal(groupoid: Groupoid) -> Self {
        Group::Universal(Arc::new(groupoid))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Group::Finite(_) => "finite-table",
            Group::FreeProduct(_) => "free-product",
            Group::Universal(_) => "ugroup",
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match self {
            Group::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub fn finite(&self) -> Result<&FiniteGroup> {
        self.as_finite().ok_or(Error::UnsupportedGroup(self.kind()))
    }

    pub fn identity(&self) -> Elem {
        match self {
            Group::Finite(g) => Elem::Finite(g.identity()),
            Group::FreeProduct(_) => Elem::Free(vec![]),
            Group::Universal(_) => Elem::Universal(UWord::default()),
        }
    }

    pub fn is_identity(&self, a: &Elem) -> bool {
        *a == self.identity()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Group::Finite(g), Elem::Finite(x), Elem::Finite(y)) => Elem::Finite(g.mul(*x, *y)),
            (Group::FreeProduct(g), Elem::Free(x), Elem::Free(y)) => Elem::Free(g.mul_unchecked(x, y)),
            (Group::Universal(g), Elem::Universal(x), Elem::Universal(y)) => Elem::Universal(ugroup::multiply(g, x, y)),
            _ => panic!("elements {a:?}, {b:?} do not belong to a {} group", self.kind()),
        }
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Group::Finite(g), Elem::Finite(x)) => Elem::Finite(g.inv(*x)),
            (Group::FreeProduct(g), Elem::Free(x)) => Elem::Free(g.invert(x)),
            (Group::Universal(g), Elem::Universal(x)) => Elem::Universal(ugroup::invert(g, x)),
            _ => mismatch(self, a),
        }
    }

    /// Whether `a` is a well-formed element of this group.
    pub fn contains(&self, a: &Elem) -> bool {
        match (self, a) {
            (Group::Finite(g), Elem::Finite(x)) => *x < g.order(),
            (Group::FreeProduct(g), Elem::Free(x)) => g.is_normal(x),
            (Group::Universal(g), Elem::Universal(x)) => ugroup::is_normal_form(g, x),
            _ => false,
        }
    }

    /// All elements, when the group is known to be finite.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            Group::Finite(g) => Some(g.elements().map(Elem::Finite).collect()),
            Group::FreeProduct(g) => g.elements().map(|v| v.into_iter().map(Elem::Free).collect()),
            Group::Universal(g) => ugroup::finite_elements(g).map(|v| v.into_iter().map(Elem::Universal).collect()),
        }
    }

    /// A generating set: all non-identity elements, factor syllables, or morphism classes.
    pub fn generators(&self) -> Vec<Elem> {
        match self {
            Group::Finite(g) => g.elements().filter(|&e| e != g.identity()).map(Elem::Finite).collect(),
            Group::FreeProduct(g) => g
                .factors()
                .iter()
                .enumerate()
                .flat_map(|(i, f)| {
                    f.elements()
                        .filter(move |&e| e != f.identity())
                        .map(move |e| Elem::Free(vec![Syllable { factor: i, elem: e }]))
                })
                .collect(),
            Group::Universal(g) => (0..g.morphism_count())
                .filter(|&m| !g.is_identity(m))
                .map(|m| Elem::Universal(UWord(vec![m])))
                .collect(),
        }
    }

    fn identity_name(&self) -> &'static str {
        match self {
            Group::Universal(g) if g.morphism_index("1").is_some_and(|m| !g.is_identity(m)) => "",
            _ => "1",
        }
    }

    pub fn name(&self, a: &Elem) -> String {
        match (self, a) {
            (Group::Finite(g), Elem::Finite(x)) => g.name(*x).to_string(),
            (_, Elem::Free(w)) if w.is_empty() => self.identity_name().to_string(),
            (_, Elem::Universal(w)) if w.0.is_empty() => self.identity_name().to_string(),
            (Group::FreeProduct(g), Elem::Free(w)) => w
                .iter()
                .map(|s| format!("{}:{}", s.factor, g.factors()[s.factor].name(s.elem)))
                .collect::<Vec<_>>()
                .join(" "),
            (Group::Universal(g), Elem::Universal(w)) => {
                w.0.iter().map(|&m| g.morphism_name(m)).collect::<Vec<_>>().join(" ")
            }
            _ => mismatch(self, a),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let unknown = || Error::UnknownId { kind: "group element", id: s.to_string() };
        match self {
            Group::Finite(g) => g.index_of(s).map(Elem::Finite).ok_or_else(unknown),
            Group::FreeProduct(g) => {
                if s.trim().is_empty() || s == "1" {
                    return Ok(Elem::Free(vec![]));
                }
                let mut word = Vec::new();
                for token in s.split_whitespace() {
                    let (factor, name) = token.split_once(':').ok_or_else(unknown)?;
                    let factor: usize = factor.parse().map_err(|_| unknown())?;
                    let elem = g.factors().get(factor).and_then(|f| f.index_of(name)).ok_or_else(unknown)?;
                    word.push(Syllable { factor, elem });
                }
                if !g.is_normal(&word) {
                    return Err(Error::Malformed(format!("`{s}` is not in free-product normal form")));
                }
                Ok(Elem::Free(word))
            }
            Group::Universal(g) => {
                let mut word = UWord::default();
                if s.trim().is_empty() || (s == "1" && self.identity_name() == "1") {
                    return Ok(Elem::Universal(word));
                }
                for token in s.split_whitespace() {
                    let m = g.morphism_index(token).ok_or_else(unknown)?;
                    word = ugroup::multiply(g, &word, &ugroup::letter(g, m));
                }
                Ok(Elem::Universal(word))
            }
        }
    }

    pub fn to_doc(&self) -> GroupDoc {
        match self {
            Group::Finite(g) => GroupDoc::Finite(g.to_doc()),
            Group::FreeProduct(g) => {
                GroupDoc::FreeProduct { free_product: g.factors().iter().map(|f| f.to_doc()).collect() }
            }
            Group::Universal(g) => GroupDoc::Universal { ugroup_of: g.to_doc() },
        }
    }

    pub fn from_doc(doc: &GroupDoc) -> Result<Self> {
        Ok(match doc {
            GroupDoc::Finite(d) => FiniteGroup::from_doc(d)?.into(),
            GroupDoc::FreeProduct { free_product } => {
                FreeProduct::new(free_product.iter().map(FiniteGroup::from_doc).collect::<Result<_>>()?).into()
            }
            GroupDoc::Universal { ugroup_of } => {
                let g = Groupoid::from_doc(ugroup_of)?;
                let violations = g.validate();
                if !violations.is_empty() {
                    return Err(Error::Invalid(violations));
                }
                Group::universal(g)
            }
        })
    }
}

/// A group homomorphism, stored by its values on the canonical generators of its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupHom {
    /// Finite domain: the image of every element, by index.
    Table(Vec<Elem>),
    /// Free-product domain: per factor, the image of every factor element.
    PerFactor(Vec<Vec<Elem>>),
    /// Universal-group domain: the image of the class of every morphism.
    OnMorphisms(Vec<Elem>),
}

impl GroupHom {
    /// Samples `f` on the generators of `domain`; `f` must be a homomorphism for the result to be one.
    pub fn from_fn(domain: &Group, mut f: impl FnMut(&Elem) -> Elem) -> Self {
        match domain {
            Group::Finite(g) => GroupHom::Table(g.elements().map(|e| f(&Elem::Finite(e))).collect()),
            Group::FreeProduct(g) => GroupHom::PerFactor(
                g.factors()
                    .iter()
                    .enumerate()
                    .map(|(i, fg)| {
                        fg.elements()
                            .map(|e| {
                                let w = if e == fg.identity() { vec![] } else { vec![Syllable { factor: i, elem: e }] };
                                f(&Elem::Free(w))
                            })
                            .collect()
                    })
                    .collect(),
            ),
            Group::Universal(g) => GroupHom::OnMorphisms(
                (0..g.morphism_count()).map(|m| f(&Elem::Universal(ugroup::letter(g, m)))).collect(),
            ),
        }
    }

    pub fn identity(domain: &Group) -> Self {
        Self::from_fn(domain, |g| g.clone())
    }

    pub fn trivial(domain: &Group, codomain: &Group) -> Self {
        let e = codomain.identity();
        Self::from_fn(domain, |_| e.clone())
    }

    pub fn apply(&self, codomain: &Group, g: &Elem) -> Elem {
        match (self, g) {
            (GroupHom::Table(t), Elem::Finite(i)) => t[*i].clone(),
            (GroupHom::PerFactor(t), Elem::Free(w)) => {
                w.iter().fold(codomain.identity(), |acc, s| codomain.mul(&acc, &t[s.factor][s.elem]))
            }
            (GroupHom::OnMorphisms(t), Elem::Universal(w)) => {
                w.0.iter().fold(codomain.identity(), |acc, &m| codomain.mul(&acc, &t[m]))
            }
            _ => panic!("element {g:?} is outside the domain of this homomorphism"),
        }
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &GroupHom, inner: &GroupHom, domain: &Group, middle: &Group, codomain: &Group) -> Self {
        Self::from_fn(domain, |g| outer.apply(codomain, &inner.apply(middle, g)))
    }

    fn shape_ok(&self, domain: &Group) -> bool {
        match (self, domain) {
            (GroupHom::Table(t), Group::Finite(g)) => t.len() == g.order(),
            (GroupHom::PerFactor(t), Group::FreeProduct(g)) => {
                t.len() == g.factors().len() && t.iter().zip(g.factors()).all(|(row, f)| row.len() == f.order())
            }
            (GroupHom::OnMorphisms(t), Group::Universal(g)) => t.len() == g.morphism_count(),
            _ => false,
        }
    }

    /// Violations of the homomorphism property, checked on defining relations.
    pub fn violations(&self, domain: &Group, codomain: &Group) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.shape_ok(domain) {
            out.push(Violation::new(Axiom::Shape, format!("homomorphism does not match a {} domain", domain.kind())));
            return out;
        }
        let images: Vec<&Elem> = match self {
            GroupHom::Table(t) | GroupHom::OnMorphisms(t) => t.iter().collect(),
            GroupHom::PerFactor(t) => t.iter().flatten().collect(),
        };
        if let Some(bad) = images.iter().find(|e| !codomain.contains(e)) {
            out.push(Violation::new(Axiom::Closure, format!("image {bad:?} is not in the codomain")));
            return out;
        }
        let mut table_check = |f: &FiniteGroup, t: &[Elem], label: &str| {
            for a in f.elements() {
                for b in f.elements() {
                    if t[f.mul(a, b)] != codomain.mul(&t[a], &t[b]) {
                        out.push(Violation::new(
                            Axiom::Homomorphism,
                            format!("{label}: product of {} and {} not preserved", f.name(a), f.name(b)),
                        ));
                        return;
                    }
                }
            }
        };
        match (self, domain) {
            (GroupHom::Table(t), Group::Finite(g)) => table_check(g, t, "table"),
            (GroupHom::PerFactor(t), Group::FreeProduct(g)) => {
                for (i, f) in g.factors().iter().enumerate() {
                    table_check(f, &t[i], &format!("factor {i}"));
                }
            }
            (GroupHom::OnMorphisms(t), Group::Universal(g)) => {
                for m in 0..g.morphism_count() {
                    if g.is_identity(m) && !codomain.is_identity(&t[m]) {
                        out.push(Violation::new(
                            Axiom::Homomorphism,
                            format!("identity {} not sent to 1", g.morphism_name(m)),
                        ));
                    }
                    for r in 0..g.morphism_count() {
                        if let Some(c) = g.compose(m, r) {
                            if t[c] != codomain.mul(&t[m], &t[r]) {
                                out.push(Violation::new(
                                    Axiom::Homomorphism,
                                    format!(
                                        "relation {}{} = {} not preserved",
                                        g.morphism_name(m),
                                        g.morphism_name(r),
                                        g.morphism_name(c)
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Values on generators, keyed by generator name.
    pub fn to_doc(&self, domain: &Group, codomain: &Group) -> BTreeMap<String, String> {
        domain.generators().iter().map(|g| (domain.name(g), codomain.name(&self.apply(codomain, g)))).collect()
    }

    /// Reads generator images; generators that are omitted are sent to the identity only if they are identities.
    pub fn from_doc(doc: &BTreeMap<String, String>, domain: &Group, codomain: &Group) -> Result<Self> {
        let mut given: HashMap<Elem, Elem> = HashMap::new();
        for (k, v) in doc {
            let g = domain.parse(k)?;
            let h = codomain.parse(v)?;
            if domain.is_identity(&g) {
                if !codomain.is_identity(&h) {
                    return Err(Error::Malformed(format!("identity `{k}` must map to the identity")));
                }
                continue;
            }
            if !domain.generators().contains(&g) {
                return Err(Error::Malformed(format!("`{k}` is not a generator of the domain")));
            }
            given.insert(g, h);
        }
        let mut missing = None;
        let hom = Self::from_fn(domain, |g| {
            if domain.is_identity(g) {
                return codomain.identity();
            }
            given.get(g).cloned().unwrap_or_else(|| {
                missing.get_or_insert_with(|| domain.name(g));
                codomain.identity()
            })
        });
        match missing {
            Some(name) => Err(Error::Malformed(format!("no image given for generator `{name}`"))),
            None => Ok(hom),
        }
    }

    /// Inverse of a bijective homomorphism between enumerable groups.
    pub fn inverse(&self, domain: &Group, codomain: &Group) -> Result<GroupHom> {
        let dom = domain.elements().ok_or(Error::NotEnumerable("domain group"))?;
        let cod = codomain.elements().ok_or(Error::NotEnumerable("codomain group"))?;
        let mut back: HashMap<Elem, Elem> = HashMap::new();
        for g in &dom {
            if back.insert(self.apply(codomain, g), g.clone()).is_some() {
                return Err(Error::NotBijective("group homomorphism is not injective".into()));
            }
        }
        if back.len() != cod.len() {
            return Err(Error::NotBijective("group homomorphism is not surjective".into()));
        }
        Ok(Self::from_fn(codomain, |h| back[h].clone()))
    }
}
