//! Command-line runner for the nw2d workbench.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::RunConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "nw2d", version, about = "Pseudospectral workbench for 2D incompressible Hookean elastodynamics")]
struct Cli {
    /// TOML run configuration; built-in defaults when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory, overriding the configuration.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads for FFTs and dense products.
    #[arg(long, global = true, env = "NW2D_THREADS", value_name = "K")]
    threads: Option<usize>,
    /// Allow end times beyond the wraparound horizon.
    #[arg(long, global = true)]
    override_horizon: bool,
    /// Print the documented default configuration and exit.
    #[arg(long)]
    print_defaults: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate the configured initial data and write run artifacts.
    Run,
    /// Check the symbol identities and the convention constants.
    VerifySymbols(SymbolArgs),
    /// Check the derivation identities on random states.
    VerifyDerivation(DerivationArgs),
    /// Measure the free half-wave decay of the configured data.
    Decay(DecayArgs),
    /// Measure convergence of the normal-form profile along a run.
    Scatter(ScatterArgs),
    /// Print the norms of a stored state or of the configured initial data.
    Norms(NormsArgs),
}

#[derive(Args, Debug)]
pub struct SymbolArgs {
    /// Random frequency pairs per identity.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct DerivationArgs {
    /// Number of random states.
    #[arg(long, default_value_t = 3)]
    pub states: u64,
    /// Flip the sign of the first deformation nonlinearity before checking;
    /// the check is expected to fail.
    #[arg(long)]
    pub perturb: bool,
}

#[derive(Args, Debug)]
pub struct DecayArgs {
    #[arg(long, default_value_t = 4.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = 48.0)]
    pub t_max: f64,
    /// Number of equally spaced sample times ending at `t_max`.
    #[arg(long, default_value_t = 24)]
    pub samples: usize,
    /// Fail unless the fitted slope lies within `slope_tol` of this value.
    #[arg(long, allow_hyphen_values = true)]
    pub expect_slope: Option<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub slope_tol: f64,
}

#[derive(Args, Debug)]
pub struct ScatterArgs {
    /// Run directory whose `fields/` checkpoints are used; the configured
    /// run is integrated when omitted.
    #[arg(long, value_name = "DIR")]
    pub from: Option<PathBuf>,
    /// Use checkpoints at multiples of this time.
    #[arg(long, default_value_t = 4.0)]
    pub every: f64,
    #[arg(long, default_value_t = 4.0)]
    pub t_min: f64,
    /// Fail unless the sequence is nonincreasing within 5% and drops by at
    /// least 30% over its span.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct NormsArgs {
    /// Checkpoint file written by `run`.
    #[arg(long, value_name = "FILE")]
    pub state: Option<PathBuf>,
}

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// A check ran and did not pass.
    Assertion(String),
    /// Bad configuration, arguments or files.
    Config(String),
    /// Non-finite values or a diverging iteration.
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl From<nw2d::Error> for Failure {
    fn from(e: nw2d::Error) -> Self {
        use nw2d::Error::*;
        match e {
            BlowUp { .. } | Divergence(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Assertion(m) => write!(f, "check failed: {m}"),
            Failure::Config(m) => write!(f, "configuration error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

/// Settings shared by every subcommand.
pub struct Context {
    pub config: RunConfig,
    pub out: PathBuf,
    pub override_horizon: bool,
    pub threads: usize,
}

fn context(cli: &Cli) -> Result<Context, Failure> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    config.validate(cli.override_horizon)?;
    let threads = cli.threads.unwrap_or(1);
    if threads == 0 {
        return Err(Failure::Config("thread count must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Config(e.to_string()))?;
    Ok(Context {
        out: cli.out.clone().unwrap_or_else(|| config.out.clone()),
        config,
        override_horizon: cli.override_horizon,
        threads,
    })
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    if cli.print_defaults {
        print!("{}", config::documented_defaults());
        return Ok(());
    }
    let Some(command) = cli.command.as_ref() else {
        return Err(Failure::Config("no subcommand given; see --help".into()));
    };
    let ctx = context(&cli)?;
    match command {
        Command::Run => commands::run(&ctx),
        Command::VerifySymbols(a) => commands::verify_symbols(&ctx, a),
        Command::VerifyDerivation(a) => commands::verify_derivation(&ctx, a),
        Command::Decay(a) => commands::decay(&ctx, a),
        Command::Scatter(a) => commands::scatter(&ctx, a),
        Command::Norms(a) => commands::norms(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("nw2d: {f}");
            ExitCode::from(f.code())
        }
    }
}
