use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "nikishin", version, about = "Hermite-Padé solvers and certification for Nikishin systems")]
pub struct Cli {
    /// Worker threads (default: number of logical cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the support conditions of a system file.
    Validate(SystemArgs),
    /// Solve one approximation problem.
    Solve(SolveArgs),
    /// Normality, zero location, orthogonality and interlacing for every index up to a budget.
    Scan(ScanArgs),
    /// Product, ratio, quotient and reversal formulas at sample points.
    Identities(IdentityArgs),
    /// Randomised zero bound for linear forms of a generator tail.
    AtTest(AtArgs),
    /// Convergence of type II approximants along the step line.
    Converge(ConvergeArgs),
    /// Decomposition 1/ŝ = ℓ + τ̂ from moments.
    Inverse(InverseArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// System definition (JSON).
    #[arg(long)]
    pub system: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveType {
    Type1,
    Type2,
    Mixed,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long = "type", value_enum)]
    pub kind: SolveType,
    /// Multi-index such as "2" or "(1,1)"; for mixed, "((1,1);(1))".
    #[arg(long)]
    pub index: String,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Largest |n₁| to scan.
    #[arg(long)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Sample points separated by ';', each "re" or "re,im" (default: 10; -5; 3/2,2; 1/3,-1).
    #[arg(long)]
    pub points: Option<String>,
}

#[derive(Debug, Args)]
pub struct AtArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Position of the generator that plays σ_1 (default 1, or 0 for a single measure).
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long, default_value_t = 5)]
    pub max_norm: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Largest |n| on the step line.
    #[arg(long, default_value_t = 12)]
    pub max_norm: usize,
    /// Grid "lo,hi,count" on the real line, away from the hull of σ_0.
    #[arg(long, default_value = "-3,-2,21")]
    pub grid: String,
    /// Near-diagonal constant c in n_j ≥ |n|/(m+1) − c.
    #[arg(long, default_value_t = 1)]
    pub c: usize,
    /// First |n| used for the trend checks.
    #[arg(long, default_value_t = 3)]
    pub fit_from: usize,
    /// Required slope of ln(sup-error) against |n|.
    #[arg(long, default_value_t = -0.1, allow_negative_numbers = true)]
    pub max_slope: f64,
    /// Directory for CSV, JSON and gnuplot tables.
    #[arg(long)]
    pub tables: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InverseArgs {
    /// Comma-separated moments c_0, c_1, … as rationals.
    #[arg(long, conflicts_with = "moments_file")]
    pub moments: Option<String>,
    /// File with one moment per line or a JSON array of strings.
    #[arg(long)]
    pub moments_file: Option<PathBuf>,
    /// Highest τ moment d_n to compute (needs c_0 … c_{n+2}).
    #[arg(long)]
    pub n: usize,
}
