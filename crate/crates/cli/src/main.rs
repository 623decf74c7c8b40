//! `brickshadow`: frame-operator eigenvalues, oracle cross-checks, shadow
//! estimation runs, ensemble comparisons and sweeps, written as CSV or JSON.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use brickshadow::{BoundaryCondition, PauliString};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] brickshadow::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CrossCheck(_)
            | CliError::Core(brickshadow::Error::FastPathMismatch { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "brickshadow",
    version,
    about = "Classical shadows with one-round brickwork circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Frame-operator eigenvalue of brickwork circuits for Pauli strings.
    FrameEig(FrameEigArgs),
    /// Recurrence and closed forms against dense contraction and sampling.
    OracleCheck(OracleCheckArgs),
    /// Monte-Carlo shadow estimation of one Pauli expectation on |0…0⟩.
    Estimate(EstimateArgs),
    /// Brickwork against local-Clifford variance for given strings.
    Compare(CompareArgs),
    /// Probability that brickwork beats local Cliffords for random strings.
    SweepProb(SweepProbArgs),
    /// Smallest support at which a fully supported string favours brickwork.
    ThresholdSweep(ThresholdSweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleArg {
    Bw,
    Lc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorArg {
    Mean,
    MedianOfMeans,
}

#[derive(Debug, Args, Serialize)]
pub struct OutputArgs {
    /// Emit a JSON array instead of CSV.
    #[arg(long)]
    pub json: bool,
    /// Output file (stdout if absent); a manifest is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct FrameEigArgs {
    /// Pauli string over I, X, Y, Z; qubit 1 is the leftmost letter.
    #[arg(long, required_unless_present = "n", conflicts_with = "n")]
    pub pauli: Vec<PauliString>,
    /// Qubit count for --all-supported.
    #[arg(long, requires = "all_supported")]
    pub n: Option<usize>,
    /// Use Z on every qubit, so every brick is supported.
    #[arg(long, requires = "n")]
    pub all_supported: bool,
    #[arg(long, default_value = "periodic")]
    pub boundary: BoundaryCondition,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct OracleCheckArgs {
    #[arg(long)]
    pub n: usize,
    /// Shots per sampled eigenvalue (0 skips sampling).
    #[arg(long, default_value_t = 100_000)]
    pub shots: u64,
    #[arg(long, env = "BRICKSHADOW_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    /// Expected qubit count; must match the Pauli string if given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub pauli: PauliString,
    #[arg(long, value_enum, default_value = "bw")]
    pub ensemble: EnsembleArg,
    #[arg(long, default_value = "periodic")]
    pub boundary: BoundaryCondition,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    #[arg(long, env = "BRICKSHADOW_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "mean")]
    pub estimator: EstimatorArg,
    /// Batch count for the median-of-means estimator.
    #[arg(long, default_value_t = 10)]
    pub batches: u64,
    /// Check the Z-type fast path against general evaluation on every shot.
    #[arg(long)]
    pub cross_check: bool,
    /// Write the raw snapshots of run 0 to this CSV file.
    #[arg(long)]
    pub snapshots: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long, required = true)]
    pub pauli: Vec<PauliString>,
    #[arg(long, default_value = "periodic")]
    pub boundary: BoundaryCondition,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepProbArgs {
    #[arg(long, default_value_t = 4, conflicts_with = "n")]
    pub n_min: usize,
    #[arg(long, default_value_t = 24, conflicts_with = "n")]
    pub n_max: usize,
    /// Single qubit count (shorthand for equal --n-min and --n-max).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 65_536)]
    pub samples: u64,
    #[arg(long, env = "BRICKSHADOW_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "periodic")]
    pub boundary: BoundaryCondition,
    /// Enumerate all strings exactly instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ThresholdSweepArgs {
    #[arg(long, default_value_t = 100)]
    pub n_max: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::FrameEig(a) => commands::frame_eig(&a),
        Command::OracleCheck(a) => commands::oracle_check(&a),
        Command::Estimate(a) => commands::estimate(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::SweepProb(a) => commands::sweep_prob(&a),
        Command::ThresholdSweep(a) => commands::threshold_sweep(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
