//! Serializable summaries written by the inspection commands.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Serialize)]
pub struct ShapeFlags {
    pub rabin: bool,
    pub streett: bool,
    pub parity: bool,
}

#[derive(Serialize)]
pub struct ZielonkaReport {
    pub even: bool,
    pub height: usize,
    pub interval: [u32; 2],
    pub shape: ShapeFlags,
    pub nodes: Vec<TreeNode>,
}

#[derive(Serialize)]
pub struct TreeNode {
    pub address: String,
    pub label: Vec<String>,
    pub priority: u32,
}

#[derive(Serialize)]
pub struct AcdReport {
    pub polarity: String,
    pub trees: Vec<AcdTreeReport>,
}

#[derive(Serialize)]
pub struct AcdTreeReport {
    pub index: usize,
    pub accepting: bool,
    pub height: usize,
    pub nodes: Vec<AcdNode>,
}

#[derive(Serialize)]
pub struct AcdNode {
    pub address: String,
    pub edges: Vec<String>,
    pub states: Vec<String>,
    pub priority: u32,
}

#[derive(Serialize)]
pub struct StatsReport {
    pub size: usize,
    pub interval: [u32; 2],
    pub polarity: String,
    pub heights: Vec<usize>,
}

#[derive(Serialize)]
pub struct ShapeReport {
    pub rabin: bool,
    pub streett: bool,
    pub parity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_interval: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak_k: Option<usize>,
    pub offenders: Vec<OffenderReport>,
}

#[derive(Serialize)]
pub struct OffenderReport {
    pub state: String,
    pub tree: usize,
    pub node: String,
    pub round: bool,
}

#[derive(Serialize)]
pub struct MorphismReport {
    pub structural: Vec<String>,
    pub surjective: bool,
    pub injective: bool,
    pub bijective: bool,
    pub acceptance_preserving: bool,
}

#[derive(Serialize)]
pub struct SolveReport {
    pub eve: Vec<String>,
    pub adam: Vec<String>,
    /// Whether the positional strategies passed the certificate check.
    pub certified: bool,
    pub winner: BTreeMap<String, String>,
    /// Winning positional choices; for Muller games these are on the
    /// vertices of the parity transform.
    pub strategy: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct EquivReport {
    pub equivalent: bool,
    pub loops: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

pub fn to_text<T: Serialize>(value: &T) -> String {
    toml::to_string(value).expect("reports always serialize")
}
