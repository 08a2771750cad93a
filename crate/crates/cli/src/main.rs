//! `cascade`: plan, simulate and verify the layered-flow blow-up
//! construction from the command line.
//!
//! Exit codes: 0 success, 1 configuration error, 2 numerical failure,
//! 3+ verification failures (2 + failure count, clamped to 255).

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use config::RunConfig;

/// Environment variable overriding the output directory (below `--out-dir`).
const OUT_DIR_ENV: &str = "CASCADE_OUT_DIR";

#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration or I/O problem; exit 1.
    Config(String),
    /// Integration or evaluation failure; exit 2.
    Numerical(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        CliError::Numerical(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cascade",
    about = "Layered-flow singularity construction: planning, simulation, verification",
    version
)]
struct Cli {
    /// Flat `key = value` configuration file (# comments allowed).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Override one config key, e.g. --set c=16. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Output directory (beats the CASCADE_OUT_DIR env var and config keys).
    #[arg(long, global = true, value_name = "DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print and export the full parameter schedule.
    Plan,
    /// Integrate the layer chain; export trajectory CSVs and profile SVGs.
    Simulate,
    /// Export the superposed stream function, velocity, vorticity, density.
    Fields,
    /// Export the per-layer force breakdown term by term.
    Forces,
    /// Run the invariant suite and the blow-up tracker; report + CSV twin.
    Verify {
        /// Inject a fault before checking, e.g. --perturb k 1e-3.
        #[arg(long, num_args = 2, value_names = ["TARGET", "AMOUNT"])]
        perturb: Option<Vec<String>>,
    },
    /// Measure the distance to the ideal layer model across base constants.
    Probe,
    /// Estimate force norms per layer and alpha; export trend + envelopes.
    Sweep,
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
        cfg.out_dir = PathBuf::from(dir);
    }
    for assignment in &cli.set {
        cfg.apply_set(assignment)?;
    }
    if let Some(dir) = &cli.out_dir {
        cfg.out_dir = dir.clone();
    }
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| {
        CliError::config(format!(
            "cannot create output directory {}: {e}",
            cfg.out_dir.display()
        ))
    })?;
    Ok(cfg)
}

fn parse_perturbation(args: &Option<Vec<String>>) -> Result<f64, CliError> {
    let Some(pair) = args else {
        return Ok(0.0);
    };
    let [target, amount] = pair.as_slice() else {
        return Err(CliError::config("--perturb expects TARGET AMOUNT"));
    };
    if target != "k" {
        return Err(CliError::config(format!(
            "unknown perturbation target {target:?} (supported: k)"
        )));
    }
    amount
        .parse()
        .map_err(|_| CliError::config(format!("perturbation amount {amount:?} is not a number")))
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let cfg = resolve_config(cli)?;
    match &cli.cmd {
        Cmd::Plan => commands::plan_cmd(&cfg).map(|()| 0),
        Cmd::Simulate => commands::simulate_cmd(&cfg).map(|()| 0),
        Cmd::Fields => commands::fields_cmd(&cfg).map(|()| 0),
        Cmd::Forces => commands::forces_cmd(&cfg).map(|()| 0),
        Cmd::Verify { perturb } => {
            let k_perturbation = parse_perturbation(perturb)?;
            commands::verify_cmd(&cfg, k_perturbation)
        }
        Cmd::Probe => commands::probe_cmd(&cfg).map(|()| 0),
        Cmd::Sweep => commands::sweep_cmd(&cfg).map(|()| 0),
    }
}

fn main() -> ExitCode {
    // Argument-syntax problems are configuration errors (exit 1), not
    // clap's default exit 2, which this tool reserves for numerics.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful informational exits.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code.clamp(0, 255) as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
