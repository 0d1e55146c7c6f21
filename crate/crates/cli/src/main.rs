//! `dyadic`: batch verifier for 2-modular matrices and the matroids built from them.

mod commands;
mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::{Report, Runtime};

#[derive(Parser)]
#[command(name = "dyadic", version, about = "Exact checks for 2-modular matrices and matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Route {
    Matrix,
    Projection,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check Δ-modularity (or total Δ-modularity) of a matrix file.
    Modcheck {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        delta: u64,
        #[arg(long)]
        totally: bool,
    },
    /// Write a constructed matrix or matroid.
    Construct {
        /// A, Aprime, D, H, T, Tprime, random, or a catalog name such as MK(5) or U8.
        name: String,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value = "matrix")]
        via: Route,
        /// Seed for `random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count the points of a matroid.
    Epsilon {
        /// Construction name, as for `construct`.
        name: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Modularity, point counts and minor-freeness of the extremal constructions.
    VerifyMain {
        #[arg(long, default_value_t = 2)]
        r_min: usize,
        #[arg(long, default_value_t = 5)]
        r_max: usize,
    },
    /// Excluded-minor certificates for totally 2-modular representability.
    ExcludedMinor {
        /// U24+U24, U8, U8p or U25; all but U25 when omitted.
        #[arg(long)]
        name: Option<String>,
    },
    /// Largest rank-2 uniform matroid with a Δ-modular representation.
    Rank2 {
        #[arg(long)]
        delta: u64,
    },
    /// Classify each element outside a clique restriction.
    ClassifyExtension {
        #[arg(long)]
        file: PathBuf,
        /// Labels of clique elements share this prefix.
        #[arg(long)]
        clique: String,
    },
    /// Full analysis of a simple matroid over a spanning clique restriction.
    Analyze {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated clique labels.
        #[arg(long, value_delimiter = ',', conflicts_with = "clique")]
        clique_labels: Vec<String>,
        /// Clique labels share this prefix.
        #[arg(long)]
        clique: Option<String>,
    },
    /// Search a host matroid for a catalog minor.
    Minor {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = dyadic::structure::DEFAULT_MINOR_CAP)]
        cap: usize,
    },
    /// Every simple extension of M(K_{r+1}) without a U(2,5), F7 or R9 minor.
    Projections {
        #[arg(long)]
        r: usize,
        /// Largest flat lattice accepted for cut enumeration.
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
}

/// Errors that stop a command before any verdict: exit code 2.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(dyadic::Error),
}

impl From<dyadic::Error> for Failure {
    fn from(e: dyadic::Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) => write!(f, "{s}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

/// What a command produces: a report, or raw text from `construct`.
pub enum Output {
    Report(Report),
    Text(String),
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let start = Instant::now();
    match commands::dispatch(cli.command)? {
        Output::Text(text) => {
            emit(&text, &cli.output)?;
            Ok(true)
        }
        Output::Report(mut report) => {
            if cli.timing {
                report.runtime = Some(Runtime { millis: start.elapsed().as_millis() });
            }
            emit(&report.to_json(), &cli.output)?;
            Ok(report.all_pass())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
