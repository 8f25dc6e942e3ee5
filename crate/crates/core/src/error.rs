use crate::violation::Violation;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible free products")]
    IncompatibleFreeProducts,
    #[error("not connected: no morphism between {0} and {1}")]
    NotConnected(String, String),
    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: &'static str, id: String },
    #[error("duplicate {kind} `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("not enumerable: {0}")]
    NotEnumerable(&'static str),
    #[error("not bijective: {0}")]
    NotBijective(String),
    #[error("not an isomorphism")]
    NotAnIsomorphism,
    #[error("invalid groupoid action: {}", list(.0))]
    InvalidGroupoidAction(Vec<Violation>),
    #[error("invalid structure: {}", list(.0))]
    Invalid(Vec<Violation>),
    #[error("not a loop")]
    NotALoop,
    #[error("not reduced: {0}")]
    NotReduced(String),
    #[error("not a C-pair")]
    NotACPair,
    #[error("represents identity")]
    RepresentsIdentity,
    #[error("rewriting did not converge after {0} steps")]
    NoConvergence(usize),
    #[error("not a chain at index {0}")]
    NotAChain(usize),
    #[error("not concatenable")]
    NotConcatenable,
    #[error("K not normal")]
    KernelNotNormal,
    #[error("(PC) fails")]
    PcFails,
    #[error("containment fails: {0}")]
    ContainmentFails(String),
    #[error("not parallel: {0}")]
    NotParallel(String),
    #[error("presentation violated at ({0}, {1})")]
    PresentationViolated(String, String),
    #[error("not surjective: images generate a proper subgroup")]
    NotSurjective,
    #[error("ill-defined: two preimages share a source ({0}, {1})")]
    IllDefined(String, String),
    #[error("unsupported group kind: {0}")]
    UnsupportedGroup(&'static str),
    #[error("malformed input: {0}")]
    Malformed(String),
}

fn list(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
