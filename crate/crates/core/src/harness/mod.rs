//! Experiment orchestration and the operations behind the command-line tool.
//!
//! Each command function returns its output as text and maps failures onto
//! [`CliError`], whose [`CliError::exit_code`] is the process exit status.

mod record;
mod report;
mod runner;

use std::str::FromStr;

pub use record::{analyse_configuration, AnalysisError, ErrorRecord, ExperimentRecord, LogEntry, RECORD_VERSION};
pub use report::{summarise, CsvRow, Report, Summary, CHI3_CEILING};
pub use runner::{manifest_path, run_experiment, run_instance, ExperimentPlan, RunError, RunManifest, TOOL_VERSION};

use crate::colouring::{chromatic_number, dsatur, greedy_colour_graph, verify_colouring, DEFAULT_BUDGET};
use crate::constructions::{bounds_for_dimension, bounds_table, kissing_configuration, simplex_clique, BoundsRow};
use crate::geometry::{json, Configuration, TolerancePolicy};
use crate::packing_gen::{apollonian_gasket, random_tangent_packing, GeneratorParams};
use crate::tangency::{build_graph, TangencyError};

pub const BUDGET_ENV: &str = "TANGENCY_LAB_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or unparseable input.
    #[error("{0}")]
    Usage(String),
    /// The input configuration is geometrically invalid.
    #[error("{0}")]
    Domain(String),
    /// A result failed its own consistency checks.
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<TangencyError> for CliError {
    fn from(e: TangencyError) -> CliError {
        match e {
            TangencyError::InvalidConfiguration { .. } => CliError::Domain(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Node budget: explicit value, else `TANGENCY_LAB_BUDGET`, else the default.
pub fn resolve_budget(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(b) = explicit {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={text:?} is not a node count"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    Simplex,
    Kissing,
}

impl FromStr for ConstructionKind {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "simplex" => Ok(ConstructionKind::Simplex),
            "kissing" => Ok(ConstructionKind::Kissing),
            _ => Err(CliError::Usage(format!("unknown construction {s:?}; expected simplex or kissing"))),
        }
    }
}

pub fn construct(kind: ConstructionKind, d: usize) -> Result<Configuration, CliError> {
    let built = match kind {
        ConstructionKind::Simplex => simplex_clique(d),
        ConstructionKind::Kissing => kissing_configuration(d),
    };
    built.map_err(|e| CliError::Usage(e.to_string()))
}

pub fn generate_random(params: &GeneratorParams) -> Result<Configuration, CliError> {
    random_tangent_packing(params).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn generate_gasket(root: [i64; 4], depth: usize) -> Result<Configuration, CliError> {
    apollonian_gasket(root, depth)
        .map(|g| g.configuration)
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Parses configuration JSON, optionally replacing its tolerance policy.
pub fn load_configuration(text: &str, tolerance: Option<f64>) -> Result<Configuration, CliError> {
    let cfg = json::from_json(text).map_err(|e| CliError::Usage(e.to_string()))?;
    match tolerance {
        None => Ok(cfg),
        Some(eps) => {
            let policy = TolerancePolicy::approximate(eps).map_err(|e| CliError::Usage(e.to_string()))?;
            cfg.with_policy(policy).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColourMethod {
    Greedy,
    Dsatur,
    Exact,
}

impl FromStr for ColourMethod {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "greedy" => Ok(ColourMethod::Greedy),
            "dsatur" => Ok(ColourMethod::Dsatur),
            "exact" => Ok(ColourMethod::Exact),
            _ => Err(CliError::Usage(format!("unknown method {s:?}; expected greedy, dsatur or exact"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourOutput {
    /// Colouring JSON, or the chromatic result for the exact method.
    pub json: String,
    /// One human-readable line.
    pub summary: String,
}

pub fn colour(cfg: &Configuration, method: ColourMethod, budget: u64) -> Result<ColourOutput, CliError> {
    let graph = build_graph(cfg)?;
    let (n, m) = (graph.vertex_count(), graph.edge_count());
    let colouring = match method {
        ColourMethod::Greedy => greedy_colour_graph(&graph),
        ColourMethod::Dsatur => dsatur(&graph),
        ColourMethod::Exact => {
            let result = chromatic_number(&graph, budget);
            if !verify_colouring(&graph, &result.witness).unwrap_or(false) || result.lower > result.upper {
                return Err(CliError::Internal("chromatic witness is not a proper colouring".into()));
            }
            let summary = if result.exact {
                format!("n={n} edges={m} chromatic {} exact", result.upper)
            } else {
                format!(
                    "n={n} edges={m} chromatic {}..{} budget exhausted after {} nodes",
                    result.lower, result.upper, result.nodes
                )
            };
            let json = serde_json::to_string_pretty(&result).expect("results serialise");
            return Ok(ColourOutput { json, summary });
        }
    };
    let doc = colouring.to_document(&graph);
    if !doc.proper {
        return Err(CliError::Internal("heuristic colouring is not proper".into()));
    }
    Ok(ColourOutput {
        summary: format!("n={n} edges={m} palette={} proper={}", doc.palette_size, doc.proper),
        json: serde_json::to_string_pretty(&doc).expect("documents serialise"),
    })
}

/// Bound rows for `d_min..=d_max` (within 1..=64) and whether every row's
/// invariants hold.
pub fn verify_bounds(d_min: usize, d_max: usize) -> Result<(Vec<BoundsRow>, bool), CliError> {
    if !(1 <= d_min && d_min <= d_max && d_max <= 64) {
        return Err(CliError::Usage(format!("need 1 <= d_min <= d_max <= 64, got {d_min}..{d_max}")));
    }
    let rows = (d_min..=d_max)
        .map(bounds_for_dimension)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let ok = rows.iter().all(BoundsRow::holds);
    Ok((rows, ok))
}

pub fn render_bounds(rows: &[BoundsRow], as_json: bool) -> String {
    if as_json {
        rows.iter()
            .map(|r| serde_json::to_string(r).expect("rows serialise") + "\n")
            .collect()
    } else {
        bounds_table(rows)
    }
}
