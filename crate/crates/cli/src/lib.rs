//! Command implementations behind the `nikishin` binary.
//!
//! Every command returns an [`Outcome`]: a JSON report, keyed summary lines
//! and a pass flag. The binary maps outcomes and errors to exit codes.

pub mod args;
pub mod commands;
pub mod summary;

use serde::Serialize;

pub use args::{Cli, Command};
pub use summary::{SummaryLine, LIMITATION};

/// Result of one command run.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub command: String,
    pub passed: bool,
    pub summary: Vec<SummaryLine>,
    pub limitation: String,
    pub report: serde_json::Value,
}

impl Outcome {
    pub fn new(command: &str, summary: Vec<SummaryLine>, report: serde_json::Value) -> Self {
        let passed = summary.iter().all(|l| l.passed);
        Outcome { command: command.to_string(), passed, summary, limitation: LIMITATION.to_string(), report }
    }

    /// Human-readable summary, one line per key plus the limitation note.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for l in &self.summary {
            out.push_str(&l.render());
            out.push('\n');
        }
        out.push_str(&format!("{}: {}\n", self.command, if self.passed { "PASS" } else { "FAIL" }));
        out.push_str(&format!("note: {}\n", self.limitation));
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Failure classes, mapped to exit codes 2 and 3 by the binary.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable file, schema or parse error, invalid argument.
    Input(String),
    /// A library error while running a well-formed request.
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<nikishin::Error> for CliError {
    fn from(e: nikishin::Error) -> Self {
        use nikishin::Error as E;
        match e {
            E::Parse(_)
            | E::InvalidIndex(_)
            | E::InvalidMeasure(_)
            | E::SignViolation(_)
            | E::SupportsOverlap(..)
            | E::MassPointAtTouch(..)
            | E::TouchPointMisplaced(..)
            | E::UnknownPreset(_)
            | E::AtomBudget(_)
            | E::Incompatible(_)
            | E::IncompleteSequence(_)
            | E::InsufficientMoments { .. }
            | E::Precondition(_)
            | E::IndexOutOfRange(_)
            | E::EmptyInterval
            | E::ZeroTotalMass => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let prec = commands::precision_override()?;
    match &cli.command {
        Command::Validate(a) => commands::validate(a, prec),
        Command::Solve(a) => commands::solve(a, prec),
        Command::Scan(a) => commands::scan(a, prec),
        Command::Identities(a) => commands::identities(a, prec),
        Command::AtTest(a) => commands::at_test(a, prec),
        Command::Converge(a) => commands::converge(a, prec),
        Command::Inverse(a) => commands::inverse(a),
    }
}
