//! `c4ex`: build polarity graphs, check lemma inequalities, tabulate bounds, solve small
//! instances exactly and certify the F and G inequalities.
//!
//! Exit codes: 0 success, 1 a verdict failed, 2 bad usage or input.

mod cmd;
mod io;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "c4ex", version, about = "Workbench for the Turán number ex(n, C4)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the polarity graph of PG(2, q), optionally deleting degree-q vertices.
    Construct(cmd::construct::Args),
    /// Run the lemma checks on a graph6 file.
    Check(cmd::check::Args),
    /// Tabulate bounds on ex(n, C4) as CSV.
    Bounds(cmd::bounds::Args),
    /// Compute ex(n, C4) exactly by branch and bound.
    Exact(cmd::exact::Args),
    /// Certify the F and G inequalities at one point or scan for the threshold q0.
    Certify(cmd::certify::Args),
}

/// How a subcommand finished when it did not hit an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerdictFailed,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => cmd::construct::run(a),
        Command::Check(a) => cmd::check::run(a),
        Command::Bounds(a) => cmd::bounds::run(a),
        Command::Exact(a) => cmd::exact::run(a),
        Command::Certify(a) => cmd::certify::run(a),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerdictFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
