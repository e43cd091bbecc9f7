//! `obslab`: generate graphs, run detectors and exact treewidth, validate and
//! extract structures, and drive the property suites.
//!
//! Exit codes: 0 success, 1 invalid input or refused scale, 2 a structured
//! violation (invalid structure, hypothesis violation, failed suite),
//! 3 an internal invariant failure.

mod commands;
mod gen;
mod input;
mod report;
mod scan;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "obslab", version, about = "Even-hole-free graph laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph from one of the built-in families.
    Gen(gen::GenArgs),
    /// Search a graph for a forbidden or wanted structure.
    Detect(commands::DetectArgs),
    /// Treewidth: heuristic bounds, or exact with `--exact`.
    Tw(commands::TwArgs),
    /// Check a structure against its definition.
    Validate(commands::ValidateArgs),
    /// Run one of the constructive extractors.
    Extract(commands::ExtractArgs),
    /// Run a property suite and print a JSON-lines report.
    Verify(verify::VerifyArgs),
    /// Probe (even hole, H, K_t)-free graphs for large treewidth.
    ScanConjecture(scan::ScanArgs),
}

/// What a command concluded, short of an error.
pub enum Status {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let result = match cli.command {
        Command::Gen(a) => gen::run(a),
        Command::Detect(a) => commands::detect(a),
        Command::Tw(a) => commands::tw(a),
        Command::Validate(a) => commands::validate(a),
        Command::Extract(a) => commands::extract(a),
        Command::Verify(a) => verify::run(a, argv),
        Command::ScanConjecture(a) => scan::run(a, argv),
    };
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<obslab::Error>() {
                Some(obslab::Error::Internal(_)) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}
