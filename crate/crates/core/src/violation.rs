use serde::Serialize;
use std::fmt;

/// The rule a structure failed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Closure,
    Totality,
    Associativity,
    Identity,
    Inverse,
    ComposeDomain,
    MissingComposite,
    Endpoints,
    NotABijection,
    DomainMismatch,
    Composition,
    DomainCondition,
    Equivariance,
    Homomorphism,
    Shape,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Closure => "closure",
            Axiom::Totality => "totality",
            Axiom::Associativity => "associativity",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::ComposeDomain => "compose defined on non-composable pair",
            Axiom::MissingComposite => "missing composite",
            Axiom::Endpoints => "endpoints",
            Axiom::NotABijection => "not a bijection",
            Axiom::DomainMismatch => "domain mismatch",
            Axiom::Composition => "composition",
            Axiom::DomainCondition => "domain condition",
            Axiom::Equivariance => "equivariance",
            Axiom::Homomorphism => "homomorphism",
            Axiom::Shape => "shape",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: Axiom, detail: impl Into<String>) -> Self {
        Violation { axiom, detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

pub fn has(violations: &[Violation], axiom: Axiom) -> bool {
    violations.iter().any(|v| v.axiom == axiom)
}
