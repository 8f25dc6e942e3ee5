//! Serde shapes of the JSON documents read and written by the library.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteGroupDoc {
    pub elements: Vec<String>,
    pub mul: Vec<[String; 3]>,
    pub id: String,
    pub inv: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub compose: Vec<[String; 3]>,
    pub identity: BTreeMap<String, String>,
    pub inverse: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    FreeProduct { free_product: Vec<FiniteGroupDoc> },
    Universal { ugroup_of: GroupoidDoc },
    Finite(FiniteGroupDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialActionDoc {
    pub group: GroupDoc,
    pub set: Vec<String>,
    #[serde(default)]
    pub domains: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

/// A morphism of partial actions: carrier map plus images of group generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PaMorphismDoc {
    pub phi0: BTreeMap<String, String>,
    pub phi1: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidMorphismDoc {
    pub f0: BTreeMap<String, String>,
    pub f1: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CongruenceDoc {
    #[serde(default)]
    pub relation: Vec<[String; 2]>,
    #[serde(default)]
    pub kernel: Vec<String>,
}

pub type FWordDoc = Vec<(String, i8)>;
pub type UWordDoc = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinimalElementDoc {
    pub conjugator: FWordDoc,
    #[serde(rename = "loop")]
    pub loop_word: FWordDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientHomDoc {
    pub target: FiniteGroupDoc,
    pub images: BTreeMap<String, String>,
}

/// `action` rows are (morphism, point, image); identity rows may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidActionDoc {
    pub set: Vec<String>,
    pub momentum: BTreeMap<String, String>,
    pub action: Vec<[String; 3]>,
}
