//! Runs a small three-dimensional experiment batch and summarises it. No
//! instance may need more than 13 colours.
//!
//! Usage: cargo run --example probe_chi3 -- [count] [parallel]

use tangency_lab::colouring::DEFAULT_BUDGET;
use tangency_lab::harness::{run_experiment, summarise, ExperimentPlan};
use tangency_lab::packing_gen::{GeneratorParams, RadiusLaw};

fn main() {
    let mut args = std::env::args().skip(1).filter_map(|a| a.parse::<usize>().ok());
    let count = args.next().unwrap_or(50);
    let parallel = args.next().unwrap_or(4);
    let plan = ExperimentPlan {
        params: GeneratorParams::new(3, 60, 1, RadiusLaw::Uniform { lo: 0.3, hi: 3.0 }),
        count,
        parallel,
        budget: DEFAULT_BUDGET,
    };
    let dir = std::env::temp_dir();
    let log = dir.join(format!("probe_chi3_{}.jsonl", std::process::id()));
    let manifest = run_experiment(&plan, &log, std::env::args().collect()).expect("log is writable");
    let report = summarise(&std::fs::read_to_string(&log).expect("log exists"));
    println!("{} records in {}", manifest.records_written, log.display());
    println!("{}", report.summary_json());
    assert_eq!(report.summary.above_chi3_ceiling, 0);
}
