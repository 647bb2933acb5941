//! `expham`: generate host graphs, certify their spectrum, find and verify
//! Hamilton cycles, and run seeded experiments.

mod certify;
mod experiment;
mod gen;
mod ham;
mod report;

use clap::{Parser, Subcommand};
use report::{CliError, Exit};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "expham", version, about = "Hamilton cycles in spectral expanders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a host graph.
    #[command(subcommand)]
    Gen(gen::GenCommand),
    /// Certify `(n, d, λ)` for a regular graph.
    Certify(certify::CertifyArgs),
    /// Search for a Hamilton cycle.
    Ham(ham::HamArgs),
    /// Check that a cycle file is a Hamilton cycle of a graph.
    Verify {
        graph: PathBuf,
        cycle: PathBuf,
    },
    /// Run seeded trials of a preset and write one CSV row per trial.
    Experiment(experiment::ExperimentArgs),
}

fn run(cli: Cli, echo: Vec<String>) -> Result<Exit, CliError> {
    match cli.command {
        Command::Gen(cmd) => gen::run(cmd),
        Command::Certify(args) => certify::run(args),
        Command::Ham(args) => ham::run(args, echo),
        Command::Verify { graph, cycle } => ham::verify(&graph, &cycle),
        Command::Experiment(args) => experiment::run(args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(cli, echo) {
        Ok(exit) => exit.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            e.exit().code()
        }
    }
}
