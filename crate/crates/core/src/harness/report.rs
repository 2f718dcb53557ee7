use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::record::{ExperimentRecord, LogEntry};

/// Upper bound on the chromatic number of 3-dimensional configurations.
pub const CHI3_CEILING: usize = 13;

const PROXY_NOTE: &str = "instances come from one random growth process; observed maxima are lower bounds on what \
     configurations can force, not estimates of the worst case";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub errors: usize,
    /// 1-based line numbers that did not parse.
    pub corrupt_lines: Vec<usize>,
    pub max_clique: usize,
    /// Largest chromatic number proved exactly, if any instance was closed.
    pub max_exact_chromatic: Option<usize>,
    pub max_chi_upper: usize,
    pub greedy_histogram: BTreeMap<usize, usize>,
    pub dsatur_histogram: BTreeMap<usize, usize>,
    pub budget_exhausted: usize,
    pub budget_exhaustion_rate: f64,
    /// Instances where DSATUR used more colours than the greedy order.
    pub dsatur_above_greedy: usize,
    /// Records whose bound chain does not hold.
    pub chain_violations: usize,
    /// Three-dimensional records with clique or exact chromatic number above
    /// the ceiling of 13.
    pub above_chi3_ceiling: usize,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsvRow {
    pub n: usize,
    pub edges: usize,
    pub clique: usize,
    pub chi_lower: usize,
    pub chi_upper: usize,
    pub greedy: usize,
    pub dsatur: usize,
}

impl From<&ExperimentRecord> for CsvRow {
    fn from(r: &ExperimentRecord) -> CsvRow {
        CsvRow {
            n: r.n,
            edges: r.edges,
            clique: r.clique,
            chi_lower: r.chi_lower,
            chi_upper: r.chi_upper,
            greedy: r.greedy,
            dsatur: r.dsatur,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub summary: Summary,
    pub rows: Vec<CsvRow>,
}

impl Report {
    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summaries serialise")
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["n", "edges", "clique", "chi_lower", "chi_upper", "greedy", "dsatur"])
                .expect("in-memory write");
        }
        for row in &self.rows {
            w.serialize(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// Aggregates a log. Lines that do not parse are listed by number and
/// skipped; blank lines are ignored.
pub fn summarise(log: &str) -> Report {
    let mut s = Summary {
        note: PROXY_NOTE.to_string(),
        ..Summary::default()
    };
    let mut rows = Vec::new();
    for (i, line) in log.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let r = match serde_json::from_str::<LogEntry>(line) {
            Ok(LogEntry::Record(r)) => r,
            Ok(LogEntry::Error(_)) => {
                s.errors += 1;
                continue;
            }
            Err(_) => {
                s.corrupt_lines.push(i + 1);
                continue;
            }
        };
        s.records += 1;
        s.max_clique = s.max_clique.max(r.clique);
        s.max_chi_upper = s.max_chi_upper.max(r.chi_upper);
        if r.chi_exact {
            s.max_exact_chromatic = Some(s.max_exact_chromatic.unwrap_or(0).max(r.chi_upper));
        }
        *s.greedy_histogram.entry(r.greedy).or_default() += 1;
        *s.dsatur_histogram.entry(r.dsatur).or_default() += 1;
        if !r.chi_exact || !r.clique_complete {
            s.budget_exhausted += 1;
        }
        if r.dsatur > r.greedy {
            s.dsatur_above_greedy += 1;
        }
        if !r.chain_violations().is_empty() {
            s.chain_violations += 1;
        }
        if r.dimension == 3 && (r.clique > CHI3_CEILING || (r.chi_exact && r.chi_upper > CHI3_CEILING)) {
            s.above_chi3_ceiling += 1;
        }
        rows.push(CsvRow::from(&r));
    }
    if s.records > 0 {
        s.budget_exhaustion_rate = s.budget_exhausted as f64 / s.records as f64;
    }
    Report { summary: s, rows }
}
