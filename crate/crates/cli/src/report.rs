//! Serializable report types. Big integers and rationals are strings
//! (`"n"` or `"n/d"`); nothing is a float.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u64>>,
}

impl Meta {
    pub fn new(command: &str) -> Self {
        Meta {
            tool: "wild11".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub kind: String,
    pub param: u64,
    pub p: u64,
}

/// One entry per field level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerLevel<T> {
    pub q_p: T,
    pub q_p2: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolySection {
    /// Constant term first.
    pub mu: Vec<String>,
    pub mu_full: Vec<String>,
    pub mu_tilde: Vec<String>,
    pub mu_tilde_display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisSection {
    pub picard_upper: u32,
    pub picard_lower: u32,
    pub cyclotomic_factors: Vec<(u64, u32)>,
    /// `"1"`..`"10"` or `"inf"`.
    pub height: String,
    pub height_consistent: bool,
    /// Root valuations with multiplicity, increasing.
    pub newton_slopes: Vec<(String, usize)>,
    /// `null` where a check does not apply.
    pub checks: BTreeMap<String, Option<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub location: String,
    pub degree: u32,
    pub kind: String,
    pub v_delta: u32,
    pub v_c4: Option<u32>,
    pub components: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSection {
    pub rank: u32,
    pub abs_disc: u64,
    pub components: Vec<String>,
    pub artin_invariant: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WildSection {
    pub delta: String,
    pub affine_degree: u32,
    pub v_infinity: u32,
    pub tame_at_infinity: u32,
    pub wild_index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub inputs: Inputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tally: Option<PerLevel<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<PerLevel<Vec<i64>>>,
    /// Power-basis coordinates of `a_1 .. a_10`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigentraces: Option<PerLevel<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charpoly: Option<CharPolySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibers: Option<Vec<FiberEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wild: Option<WildSection>,
}

impl Report {
    pub fn new(command: &str, inputs: Inputs) -> Self {
        Report {
            meta: Meta::new(command),
            inputs,
            tally: None,
            traces: None,
            eigentraces: None,
            charpoly: None,
            analysis: None,
            fibers: None,
            lattice: None,
            wild: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub square_class: String,
    pub members: Vec<u64>,
    pub mu_tilde: Vec<String>,
    pub mu_tilde_display: String,
    pub picard_upper: u32,
    pub height: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub meta: Meta,
    pub p: u64,
    pub distinct_polynomials: usize,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub meta: Meta,
    pub verified: bool,
    pub cofactor: String,
    pub remainder: String,
    /// Prime (as a string key) to whether the identity survives reduction.
    pub reductions: BTreeMap<String, bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub meta: Meta,
    pub kind: String,
    pub param: u64,
    pub q: u64,
    pub count: u64,
}
