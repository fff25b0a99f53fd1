//! Command-line front end.
//!
//! All real work happens in the library's `cli` module; this file parses
//! arguments, routes streams (machine-readable JSON on stdout, diagnostics
//! and tables on stderr), and maps failures to exit codes:
//! 0 success, 1 usage error, 2 data or validation error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lanegen::cli::{
    cmd_evaluate, cmd_gen_map, cmd_generate, cmd_plot, cmd_predict, cmd_stats, resolve_config,
    to_json_document, IndexSelection, MapSpec, Overrides, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "lanegen",
    version,
    about = "Synthesize, predict, and score lane-graph trajectory datasets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Flags shared by the dataset subcommands. Any value set here overrides the
/// corresponding config-file field.
#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Lane-graph map file (JSON)
    #[arg(long)]
    map: Option<PathBuf>,
    /// Run config file (JSON; omitted fields take defaults)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (plot: output directory)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed for dataset generation
    #[arg(long)]
    seed: Option<u64>,
    /// Number of samples to generate
    #[arg(long)]
    num_samples: Option<u64>,
    /// Prediction mode count and metric k
    #[arg(long)]
    k: Option<usize>,
    /// Miss-rate final-displacement threshold, meters
    #[arg(long)]
    miss_threshold: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Chain,
    Fork,
    Grid,
    Roundabout,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a synthetic map file
    GenMap {
        /// Map topology to build
        #[arg(value_enum)]
        kind: MapKind,
        /// Where to write the map JSON
        #[arg(long)]
        out: PathBuf,
        /// chain: number of lanelets
        #[arg(long, default_value_t = 5)]
        n: u64,
        /// chain/fork/grid: lanelet length, meters
        #[arg(long, default_value_t = 10.0)]
        len: f64,
        /// fork: number of branches
        #[arg(long, default_value_t = 3)]
        branches: u64,
        /// grid: intersection rows
        #[arg(long, default_value_t = 3)]
        rows: u64,
        /// grid: intersection columns
        #[arg(long, default_value_t = 3)]
        cols: u64,
        /// roundabout: number of exits
        #[arg(long, default_value_t = 4)]
        exits: u64,
        /// roundabout: ring radius, meters
        #[arg(long, default_value_t = 15.0)]
        radius: f64,
    },
    /// Generate a sample dataset (JSONL plus .stats.json sidecar)
    Generate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the baseline predictor over a sample file
    Predict {
        /// Sample file (JSONL)
        samples: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Score a prediction file against its sample file
    Evaluate {
        /// Sample file (JSONL)
        samples: PathBuf,
        /// Prediction file (JSONL)
        predictions: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print structural statistics of a map file
    Stats {
        /// Lane-graph map file (JSON)
        #[arg(long)]
        map: PathBuf,
    },
    /// Render samples (and optional predictions) to SVG files
    Plot {
        /// Sample file (JSONL)
        samples: PathBuf,
        /// Prediction file (JSONL)
        predictions: Option<PathBuf>,
        /// Sample index or range: 7, 2..5, 2..=5
        #[arg(long, default_value = "0", value_parser = parse_indices)]
        idx: IndexSelection,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_indices(s: &str) -> Result<IndexSelection, String> {
    s.parse()
}

enum RunError {
    Usage(String),
    Data(lanegen::Error),
}

impl From<lanegen::Error> for RunError {
    fn from(e: lanegen::Error) -> Self {
        RunError::Data(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", one_line(&e.to_string()));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Collapse a multi-line clap message into the single diagnostic line,
/// dropping the usage block.
fn one_line(rendered: &str) -> String {
    rendered
        .lines()
        .map(str::trim)
        .take_while(|l| !l.starts_with("Usage:"))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("; ")
}

fn run(cli: Cli) -> Result<(), RunError> {
    match cli.cmd {
        Cmd::GenMap { kind, out, n, len, branches, rows, cols, exits, radius } => {
            let spec = match kind {
                MapKind::Chain => MapSpec::Chain { n, len },
                MapKind::Fork => MapSpec::Fork { branches, len },
                MapKind::Grid => MapSpec::Grid { rows, cols, len },
                MapKind::Roundabout => MapSpec::Roundabout { exits, radius },
            };
            let summary = cmd_gen_map(&spec, &out)?;
            print!("{}", to_json_document(&summary)?);
        }
        Cmd::Generate { common } => {
            let cfg = resolve(&common)?;
            require(&cfg.map, "--map")?;
            require(&cfg.out, "--out")?;
            let stats = cmd_generate(&cfg, thread_count()?)?;
            print!("{}", to_json_document(&stats)?);
        }
        Cmd::Predict { samples, common } => {
            let cfg = resolve(&common)?;
            require(&cfg.map, "--map")?;
            require(&cfg.out, "--out")?;
            let stats = cmd_predict(&cfg, &samples)?;
            print!("{}", to_json_document(&stats)?);
        }
        Cmd::Evaluate { samples, predictions, common } => {
            let cfg = resolve(&common)?;
            let doc = cmd_evaluate(&cfg, &samples, &predictions)?;
            print!("{}", to_json_document(&doc)?);
            eprint!("{}", doc.render_table());
        }
        Cmd::Stats { map } => {
            let stats = cmd_stats(&map)?;
            print!("{}", to_json_document(&stats)?);
        }
        Cmd::Plot { samples, predictions, idx, common } => {
            let cfg = resolve(&common)?;
            require(&cfg.map, "--map")?;
            require(&cfg.out, "--out")?;
            let written = cmd_plot(&cfg, &samples, predictions.as_deref(), &idx.0)?;
            for path in written {
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

fn resolve(common: &CommonArgs) -> Result<RunConfig, RunError> {
    let overrides = Overrides {
        map: common.map.clone(),
        out: common.out.clone(),
        seed: common.seed,
        num_samples: common.num_samples,
        k: common.k,
        miss_threshold: common.miss_threshold,
    };
    Ok(resolve_config(common.config.as_deref(), &overrides)?)
}

fn require(field: &Option<PathBuf>, flag: &str) -> Result<(), RunError> {
    if field.is_none() {
        return Err(RunError::Usage(format!(
            "{flag} is required (set the flag or the config-file field)"
        )));
    }
    Ok(())
}

/// Worker count from LANEGEN_THREADS; 0 or unset means the default pool.
fn thread_count() -> Result<usize, RunError> {
    match std::env::var("LANEGEN_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|e| RunError::Usage(format!("LANEGEN_THREADS must be an integer: {e}"))),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(RunError::Usage(format!("LANEGEN_THREADS: {e}"))),
    }
}
