use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use serde::{Deserialize, Serialize};

use super::record::{analyse_configuration, now_ms, ErrorRecord, LogEntry, RECORD_VERSION};
use crate::geometry::json;
use crate::packing_gen::{random_tangent_packing, GeneratorParams};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Written next to the log once a run finishes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    /// Digest of the canonical parameter JSON.
    pub config_digest: String,
    pub tool_version: String,
    pub records_written: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    /// Instance `i` uses `params.seed + i` (wrapping).
    pub params: GeneratorParams,
    pub count: usize,
    pub parallel: usize,
    pub budget: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("invalid experiment: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub fn manifest_path(log: &Path) -> PathBuf {
    let mut name = log.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Generates and analyses one instance. Never fails: problems become error
/// records.
pub fn run_instance(params: &GeneratorParams, index: usize, budget: u64) -> LogEntry {
    let seed = params.seed.wrapping_add(index as u64);
    let instance = GeneratorParams {
        seed,
        ..params.clone()
    };
    let failure = |error: String| {
        LogEntry::Error(ErrorRecord {
            record_version: RECORD_VERSION,
            timestamp: now_ms(),
            seed: Some(seed),
            params: Some(instance.clone()),
            error,
        })
    };
    let cfg = match random_tangent_packing(&instance) {
        Ok(cfg) => cfg,
        Err(e) => return failure(e.to_string()),
    };
    match analyse_configuration(&cfg, "random", Some(seed), Some(instance.clone()), budget) {
        Ok(record) => LogEntry::Record(record),
        Err(e) => failure(e.to_string()),
    }
}

/// Runs a batch on a bounded worker pool. Workers pull instance indices from
/// a shared counter; a single writer appends each finished entry to the log
/// and flushes it, so an interrupted run leaves a valid prefix. Entries land
/// in completion order. The manifest is written last.
pub fn run_experiment(plan: &ExperimentPlan, log: &Path, command_line: Vec<String>) -> Result<RunManifest, RunError> {
    plan.params
        .validate()
        .map_err(|e| RunError::Invalid(e.to_string()))?;
    if plan.parallel == 0 {
        return Err(RunError::Invalid("parallelism must be at least 1".into()));
    }
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Io { path, source }
    };
    let mut out = BufWriter::new(File::create(log).map_err(io(log))?);
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<LogEntry>();
    let mut written = 0;
    let write_result: Result<(), std::io::Error> = std::thread::scope(|scope| {
        for _ in 0..plan.parallel.min(plan.count.max(1)) {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= plan.count {
                    break;
                }
                if tx.send(run_instance(&plan.params, i, plan.budget)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for entry in rx {
            writeln!(out, "{}", entry.to_line())?;
            out.flush()?;
            written += 1;
        }
        Ok(())
    });
    write_result.map_err(io(log))?;

    let params_value = serde_json::to_value(&plan.params).expect("params serialise");
    let manifest = RunManifest {
        command_line,
        config_digest: json::digest_bytes(params_value.to_string().as_bytes()),
        tool_version: TOOL_VERSION.to_string(),
        records_written: written,
    };
    let manifest_file = manifest_path(log);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
    std::fs::write(&manifest_file, text + "\n").map_err(io(&manifest_file))?;
    Ok(manifest)
}
