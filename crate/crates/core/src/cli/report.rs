use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Command;
use crate::flags::Compatibility;
use crate::symbols::{RatJson, SymbolJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDim {
    pub degree: i32,
    pub dim: usize,
}

/// `[e_x, e_y] = Σ c · e_i` over global basis indices, listed for `x < y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseBracket {
    pub x: usize,
    pub y: usize,
    pub value: Vec<(usize, RatJson)>,
}

/// Outcome of a job. Optional parts are omitted from the JSON when absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    /// The nilpotent algebra used, reloadable as a custom algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<SymbolJson>,
    pub dims: Vec<DegreeDim>,
    pub total_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compatibility: Option<Compatibility>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub quantities: BTreeMap<String, usize>,
    pub checks: BTreeMap<String, bool>,
    /// Basis vectors per degree (keyed by the degree as a string).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bases: Option<BTreeMap<String, Vec<Vec<RatJson>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<SparseBracket>>,
    pub timing_ms: u64,
}

impl Default for Report {
    fn default() -> Self {
        Report {
            command: Command::Check,
            algebra: None,
            dims: Vec::new(),
            total_dim: 0,
            status: None,
            finite: None,
            growth: None,
            compatibility: None,
            quantities: BTreeMap::new(),
            checks: BTreeMap::new(),
            bases: None,
            labels: None,
            brackets: None,
            timing_ms: 0,
        }
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// JSON with the timing zeroed, for byte-level comparisons.
    pub fn to_json_without_timing(&self) -> String {
        Report { timing_ms: 0, ..self.clone() }.to_json()
    }
}

/// Line-oriented rendering: `degree <k>: dim <d>` per component, then the
/// status, then totals and checks.
pub fn render_table(r: &Report) -> String {
    let mut out = String::new();
    for d in &r.dims {
        let _ = writeln!(out, "degree {}: dim {}", d.degree, d.dim);
    }
    if let Some(s) = &r.status {
        let _ = writeln!(out, "status: {s}");
    }
    let _ = writeln!(out, "total: {}", r.total_dim);
    if let Some(g) = &r.growth {
        let g: Vec<String> = g.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "growth: ({})", g.join(", "));
    }
    if let Some(c) = r.compatibility {
        let _ = writeln!(out, "compatibility: {}", serde_json::to_value(c).expect("serializable").as_str().unwrap_or("?"));
    }
    for (k, v) in &r.quantities {
        let _ = writeln!(out, "{k}: {v}");
    }
    for (k, v) in &r.checks {
        let _ = writeln!(out, "check {k}: {}", if *v { "pass" } else { "FAIL" });
    }
    out
}
