//! `triage` -- batch CLI for cohort generation, noise-corrected training,
//! reporting-queue simulation, and ROC statistics.

mod commands;
mod config;
mod manifest;
mod svg;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exit codes are a stable scripting contract:
/// 0 success, 1 validation error, 2 runtime/data error.
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_DATA: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "triage", version, about = "Desk-scale radiology triage experiments")]
struct Cli {
    /// Root seed; all randomness derives from it via named sub-streams.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for parallel permutation repeats (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic cohort and matching feature set.
    Gen(commands::gen::GenArgs),
    /// Train baseline and noise-corrected classifier arms.
    Train(commands::train::TrainArgs),
    /// Run the retrospective reporting-queue simulation.
    Simulate(commands::simulate::SimulateArgs),
    /// Compute AUC, DeLong, and kappa statistics from score files.
    Stats(commands::stats::StatsArgs),
}

/// Error carrying its exit classification.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Data(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Data(m) => write!(f, "error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<triage_core::Error> for CliError {
    fn from(e: triage_core::Error) -> Self {
        use triage_core::Error as E;
        match e {
            E::InvalidCohortParams(_)
            | E::InvalidConfig(_)
            | E::InvalidTransition(_)
            | E::InvalidRatings(_) => CliError::Validation(e.to_string()),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION);
        }
    };

    if let Some(jobs) = cli.jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; --jobs ignored");
        }
    }

    let ctx = commands::Context {
        seed: cli.seed,
        out_dir: cli.out_dir,
    };
    let result = match cli.command {
        Command::Gen(args) => commands::gen::run(&ctx, args),
        Command::Train(args) => commands::train::run(&ctx, args),
        Command::Simulate(args) => commands::simulate::run(&ctx, args),
        Command::Stats(args) => commands::stats::run(&ctx, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Validation(_) => ExitCode::from(EXIT_VALIDATION),
                CliError::Data(_) => ExitCode::from(EXIT_DATA),
            }
        }
    }
}
