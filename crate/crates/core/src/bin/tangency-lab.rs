use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tangency_lab::geometry::json;
use tangency_lab::harness::{self, CliError, ColourMethod, ConstructionKind, ExperimentPlan};
use tangency_lab::packing_gen::{GeneratorParams, RadiusLaw, DEFAULT_MAX_REJECTIONS};

#[derive(Parser)]
#[command(name = "tangency-lab", version, about = "Construct, generate and colour ball configurations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed, or base seed for experiments.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Node budget for clique and colouring searches [env: TANGENCY_LAB_BUDGET].
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for experiments.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    /// Relative tolerance; switches the input to approximate classification.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a simplex clique or kissing configuration.
    Construct { kind: String, dimension: usize },
    /// Generate a random packing or an Apollonian gasket.
    #[command(subcommand)]
    Generate(Generate),
    /// Colour a configuration file ("-" for stdin).
    Colour {
        input: PathBuf,
        #[arg(long, default_value = "greedy")]
        method: String,
    },
    /// Print the bound table for a range of dimensions.
    VerifyBounds {
        d_min: usize,
        d_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a batch of random instances and log one record per line.
    Experiment {
        params: PathBuf,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Summarise an experiment log.
    Report {
        log: PathBuf,
        /// CSV destination; defaults to the log path with a .csv extension.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Generate {
    Random {
        /// Generator parameters as JSON; other flags are ignored when given.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        dimension: usize,
        #[arg(long, default_value_t = 60)]
        count: usize,
        #[arg(long, default_value_t = 0.5)]
        radius_lo: f64,
        #[arg(long, default_value_t = 2.0)]
        radius_hi: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_REJECTIONS)]
        max_rejections: u32,
    },
    Gasket {
        /// Integral root curvatures, one negative.
        #[arg(long, default_value = "-1,2,2,3", allow_hyphen_values = true)]
        root: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_params(path: &Path) -> Result<GeneratorParams, CliError> {
    serde_json::from_str(&read_input(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_root(text: &str) -> Result<[i64; 4], CliError> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("root {text:?} is not a list of integers")))?;
    parts
        .try_into()
        .map_err(|_| CliError::Usage(format!("root {text:?} needs four curvatures")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = cli.global;
    let output = g.output.as_deref();
    match cli.command {
        Command::Construct { kind, dimension } => {
            let cfg = harness::construct(kind.parse::<ConstructionKind>()?, dimension)?;
            emit(output, &json::to_json_pretty(&cfg))
        }
        Command::Generate(Generate::Random {
            params,
            dimension,
            count,
            radius_lo,
            radius_hi,
            max_rejections,
        }) => {
            let mut p = match params {
                Some(path) => read_params(&path)?,
                None => GeneratorParams {
                    max_rejections,
                    ..GeneratorParams::new(dimension, count, 0, RadiusLaw::Uniform { lo: radius_lo, hi: radius_hi })
                },
            };
            if let Some(seed) = g.seed {
                p.seed = seed;
            }
            emit(output, &json::to_json_pretty(&harness::generate_random(&p)?))
        }
        Command::Generate(Generate::Gasket { root, depth }) => {
            let cfg = harness::generate_gasket(parse_root(&root)?, depth)?;
            emit(output, &json::to_json_pretty(&cfg))
        }
        Command::Colour { input, method } => {
            let method = method.parse::<ColourMethod>()?;
            let cfg = harness::load_configuration(&read_input(&input)?, g.tolerance)?;
            let out = harness::colour(&cfg, method, harness::resolve_budget(g.budget)?)?;
            emit(output, &out.json)?;
            eprintln!("{}", out.summary);
            Ok(())
        }
        Command::VerifyBounds { d_min, d_max, json } => {
            let (rows, ok) = harness::verify_bounds(d_min, d_max)?;
            emit(output, &harness::render_bounds(&rows, json))?;
            if ok {
                Ok(())
            } else {
                let broken: Vec<String> = rows.iter().flat_map(|r| r.violations()).collect();
                Err(CliError::Internal(broken.join("; ")))
            }
        }
        Command::Experiment { params, count } => {
            let mut p = read_params(&params)?;
            if let Some(seed) = g.seed {
                p.seed = seed;
            }
            let plan = ExperimentPlan {
                params: p,
                count,
                parallel: g.parallel,
                budget: harness::resolve_budget(g.budget)?,
            };
            let log = g.output.clone().unwrap_or_else(|| PathBuf::from("experiment.jsonl"));
            let manifest = harness::run_experiment(&plan, &log, std::env::args().collect())
                .map_err(|e| CliError::Usage(e.to_string()))?;
            eprintln!("{} records written to {}", manifest.records_written, log.display());
            Ok(())
        }
        Command::Report { log, csv } => {
            let report = harness::summarise(&read_input(&log)?);
            emit(output, &report.summary_json())?;
            let csv_path = csv.unwrap_or_else(|| log.with_extension("csv"));
            std::fs::write(&csv_path, report.csv()).map_err(|e| CliError::Usage(format!("{}: {e}", csv_path.display())))?;
            let corrupt = &report.summary.corrupt_lines;
            if corrupt.is_empty() {
                Ok(())
            } else {
                let lines: Vec<String> = corrupt.iter().map(usize::to_string).collect();
                Err(CliError::Usage(format!("corrupt log lines: {}", lines.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
