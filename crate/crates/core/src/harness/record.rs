use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::colouring::{chromatic_number, dsatur, greedy_colour_graph, verify_colouring};
use crate::geometry::{json, Configuration};
use crate::packing_gen::GeneratorParams;
use crate::tangency::{build_graph, TangencyError};

pub const RECORD_VERSION: u32 = 1;

/// One analysed instance, as written to an experiment log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub record_version: u32,
    /// Unix time in milliseconds.
    pub timestamp: u64,
    pub seed: Option<u64>,
    /// Where the instance came from, e.g. `random` or `simplex 3`.
    pub source: String,
    pub params: Option<GeneratorParams>,
    pub digest: String,
    pub dimension: usize,
    pub n: usize,
    pub edges: usize,
    pub max_back_degree: usize,
    pub greedy: usize,
    pub dsatur: usize,
    pub clique: usize,
    pub clique_complete: bool,
    pub chi_lower: usize,
    pub chi_upper: usize,
    pub chi_exact: bool,
    pub nodes: u64,
    pub wall_ms: u64,
}

impl ExperimentRecord {
    /// Checks `clique <= chi_lower <= chi_upper <= dsatur` and
    /// `greedy <= max_back_degree + 1`.
    pub fn chain_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let checks = [
            ("clique", self.clique, "chi_lower", self.chi_lower),
            ("chi_lower", self.chi_lower, "chi_upper", self.chi_upper),
            ("chi_upper", self.chi_upper, "dsatur", self.dsatur),
            ("greedy", self.greedy, "max_back_degree + 1", self.max_back_degree + 1),
        ];
        for (a, x, b, y) in checks {
            if x > y {
                out.push(format!("{a} {x} > {b} {y}"));
            }
        }
        if self.chi_exact != (self.chi_lower == self.chi_upper) {
            out.push("exact flag disagrees with bounds".to_string());
        }
        out
    }

    /// The record with run-dependent fields cleared, for comparing runs.
    pub fn without_timing(&self) -> ExperimentRecord {
        ExperimentRecord {
            timestamp: 0,
            wall_ms: 0,
            ..self.clone()
        }
    }
}

/// A failed instance. Failures are logged and the batch carries on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub record_version: u32,
    pub timestamp: u64,
    pub seed: Option<u64>,
    pub params: Option<GeneratorParams>,
    pub error: String,
}

/// One line of an experiment log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LogEntry {
    Record(ExperimentRecord),
    Error(ErrorRecord),
}

impl LogEntry {
    pub fn seed(&self) -> Option<u64> {
        match self {
            LogEntry::Record(r) => r.seed,
            LogEntry::Error(e) => e.seed,
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("log entries serialise")
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error(transparent)]
    Tangency(#[from] TangencyError),
    #[error("internal invariant breached: {0}")]
    Invariant(String),
}

pub fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Runs the full pipeline on one configuration: graph, back degrees, greedy,
/// DSATUR, clique and chromatic bounds. Every colouring is re-verified and
/// the bound chain checked before the record is returned.
pub fn analyse_configuration(
    cfg: &Configuration,
    source: &str,
    seed: Option<u64>,
    params: Option<GeneratorParams>,
    budget: u64,
) -> Result<ExperimentRecord, AnalysisError> {
    let start = Instant::now();
    let graph = build_graph(cfg)?;
    let order = graph.decreasing_radius_order();
    let greedy = greedy_colour_graph(&graph);
    let heuristic = dsatur(&graph);
    let chromatic = chromatic_number(&graph, budget);
    for (name, c) in [("greedy", &greedy), ("dsatur", &heuristic), ("exact witness", &chromatic.witness)] {
        if !verify_colouring(&graph, c).unwrap_or(false) {
            return Err(AnalysisError::Invariant(format!("{name} colouring is not proper")));
        }
    }
    let record = ExperimentRecord {
        record_version: RECORD_VERSION,
        timestamp: now_ms(),
        seed,
        source: source.to_string(),
        params,
        digest: json::digest(cfg),
        dimension: cfg.dimension(),
        n: graph.vertex_count(),
        edges: graph.edge_count(),
        max_back_degree: order.max_back_degree(),
        greedy: greedy.palette_size(),
        dsatur: heuristic.palette_size(),
        clique: chromatic.clique_witness.len(),
        clique_complete: chromatic.clique_complete,
        chi_lower: chromatic.lower,
        chi_upper: chromatic.upper,
        chi_exact: chromatic.exact,
        nodes: chromatic.nodes,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    let violations = record.chain_violations();
    if !violations.is_empty() {
        return Err(AnalysisError::Invariant(violations.join("; ")));
    }
    Ok(record)
}
