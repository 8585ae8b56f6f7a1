//! `mp2q`: MP2 energies from simulated quantum circuits.

mod commands;
mod manifest;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{build, correct, lower, oracle, pipeline, ue_counts};

/// Exit code for invalid input, failed validation or connectivity violations.
pub const EXIT_VALIDATION: u8 = 2;
/// Exit code for numerical failures such as zero denominators.
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "mp2q", version, about = "MP2 correlation energies from simulated quantum circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Direct-summation MP2 energy of a Hartree-Fock data file.
    Oracle(oracle::Args),
    /// λ sweeps, start-step selection and energy assembly.
    Pipeline(pipeline::Args),
    /// Lower a circuit onto a coupling map and check connectivity.
    Lower(lower::Args),
    /// Apply the lite/all correction to U_E count tables.
    Correct(correct::Args),
    /// Sample U_E (full or lite) on every basis input of one part.
    UeCounts(ue_counts::Args),
    /// Write one of the circuit families as JSON.
    Build(build::Args),
}

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let e: anyhow::Error = e.into();
        let numerical = e
            .chain()
            .any(|c| c.downcast_ref::<mp2q::Error>().is_some_and(mp2q::Error::is_numerical));
        Failure {
            code: if numerical { EXIT_NUMERICAL } else { EXIT_VALIDATION },
            message: format!("{e:#}"),
        }
    }
}

pub type CmdResult = Result<(), Failure>;

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("MP2Q_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| anyhow::anyhow!("MP2Q_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err(anyhow::anyhow!("MP2Q_THREADS must be positive").into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Oracle(a) => oracle::run(a),
        Command::Pipeline(a) => pipeline::run(a),
        Command::Lower(a) => lower::run(a),
        Command::Correct(a) => correct::run(a),
        Command::UeCounts(a) => ue_counts::run(a),
        Command::Build(a) => build::run(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
