//! `intermittency`: batch front end for the simulation and diagnostics suites.
//!
//! Exit status: 0 on success, 1 when a suite fails or errors, 2 for invalid
//! configuration or input files.

mod calibrate;
mod config;
mod demo;
mod output;
mod run;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use intermittency::cadlag::{j1_distance, m1_distance, StepPath, DEFAULT_TOL};
use intermittency::Error;

#[derive(Parser)]
#[command(name = "intermittency", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed; overrides `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Skip SVG output.
    #[arg(long)]
    no_plot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites selected in the configuration.
    Run(RunArgs),
    /// Write W_n, U_n, P_n and a Lévy path for one orbit, with an overlay plot.
    PathsDemo(RunArgs),
    /// Certified J1 or M1 distance between two step-path CSV files.
    Metric {
        path1: PathBuf,
        path2: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricTag::M1)]
        metric: MetricTag,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricTag {
    J1,
    M1,
}

/// Failure carrying its exit status.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<config::SchemaError> for Failure {
    fn from(e: config::SchemaError) -> Self {
        Failure::input(e.0)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run::run(&args.resolve()),
        Command::PathsDemo(args) => demo::paths_demo(&args.resolve()),
        Command::Metric {
            path1,
            path2,
            metric,
            tol,
        } => metric_tool(&path1, &path2, metric, tol),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Command-line overrides, applied after the file is parsed.
pub struct Invocation {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub no_plot: bool,
}

impl RunArgs {
    fn resolve(&self) -> Invocation {
        Invocation {
            config: self.config.clone(),
            out: self.out.clone(),
            seed: self.seed,
            no_plot: self.no_plot,
        }
    }
}

impl Invocation {
    pub fn load(&self) -> Result<config::RunConfig, Failure> {
        let mut cfg = config::load(&self.config)?;
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if self.no_plot {
            cfg.plot = false;
        }
        Ok(cfg)
    }
}

fn read_path(path: &std::path::Path) -> Result<StepPath<f64>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    StepPath::from_csv(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn metric_tool(
    p1: &std::path::Path,
    p2: &std::path::Path,
    tag: MetricTag,
    tol: f64,
) -> Result<u8, Failure> {
    let (a, b) = (read_path(p1)?, read_path(p2)?);
    let result = match tag {
        MetricTag::J1 => j1_distance(&a, &b, tol),
        MetricTag::M1 => m1_distance(&a, &b, tol),
    };
    match result {
        Ok(r) => {
            println!("{}", r.to_json());
            Ok(0)
        }
        Err(e @ (Error::Domain(_) | Error::Validation(_) | Error::Parse(_))) => {
            Err(Failure::input(e.to_string()))
        }
        Err(e) => Err(Failure::runtime(e.to_string())),
    }
}
