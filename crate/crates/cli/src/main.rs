mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;

/// Evaluate determinantal and Pfaffian circuits and count graph forests.
#[derive(Debug, Parser)]
#[command(name = "detcircuit", version)]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Scalar field for circuit and Pfaffian files.
    #[arg(long, value_enum, default_value_t = Field::Rational, global = true)]
    pub field: Field,
    /// Re-orient graph edges with this seed before counting.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Rational,
    Complex,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Evaluate a circuit in polynomial time.
    Eval { input: PathBuf },
    /// Evaluate a circuit by full tensor contraction.
    Oracle { input: PathBuf },
    /// Compare the fast evaluator with the oracles; exit 3 on disagreement.
    Check { input: PathBuf },
    /// List the weighted multicycles of a circuit.
    Multicycles { input: PathBuf },
    /// Translate a circuit into a Pfaffian circuit.
    Compile { input: PathBuf },
    /// Evaluate a Pfaffian circuit.
    Pfeval { input: PathBuf },
    /// Count rooted spanning forests of a graph.
    Forests { input: PathBuf },
    /// Count spanning trees of a graph.
    Trees { input: PathBuf },
    /// Rooted forests by number of roots, constant term first.
    Poly { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(CliError::USAGE),
            };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
