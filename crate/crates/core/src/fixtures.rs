//! Small named instances used by the tests, the acceptance suite and `pact fixtures`.

use crate::algebra::FiniteGroup;
use crate::doc::CongruenceDoc;
use crate::groupoid::Groupoid;
use crate::paction::PartialAction;

/// `C2 = {1, s}` swapping `{x, y}`.
pub fn z2x() -> PartialAction {
    let c2 = FiniteGroup::cyclic_named(2, "s");
    PartialAction::global(&c2, vec!["x".into(), "y".into()], |g, x| if g == 0 { x } else { 1 - x })
}

/// Two objects `a, b` with `f: a → b` and its inverse `g`.
pub fn p2() -> Groupoid {
    Groupoid::pair(&["a", "b"]).renamed(
        |o| o.to_string(),
        |m| match m {
            "a>b" => "f".into(),
            "b>a" => "g".into(),
            other => other.into(),
        },
    )
}

/// `C2` as a groupoid on the single object `*`.
pub fn oneobj_c2() -> Groupoid {
    Groupoid::from_group(&FiniteGroup::cyclic_named(2, "s"), "*")
}

/// Diagonal relation with kernel `C2` on [`z2x`]; fails (PC).
pub fn bad_cong() -> CongruenceDoc {
    CongruenceDoc { relation: vec![], kernel: vec!["s".into()] }
}

/// Every fixture as a named JSON document.
pub fn documents() -> Vec<(&'static str, serde_json::Value)> {
    let json = |v: Result<serde_json::Value, serde_json::Error>| v.expect("documents serialize");
    vec![
        ("z2x", json(serde_json::to_value(z2x().to_doc()))),
        ("p2", json(serde_json::to_value(p2().to_doc()))),
        ("oneobj_c2", json(serde_json::to_value(oneobj_c2().to_doc()))),
        ("bad-cong", json(serde_json::to_value(bad_cong()))),
    ]
}
