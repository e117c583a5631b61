//! `simsim`: invariants and canonical decompositions of unitary matrix
//! tuples under simultaneous conjugation, eigenspace flag configurations,
//! and exact homotopy-group tables. JSON in, JSON out, stable exit codes:
//! 0 success (or `similar`), 1 negative verdict, 2 inconclusive, 64 usage
//! error, 65 malformed input, 70 internal numerical failure.

mod commands;
mod schema;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "simsim", version, about = "Unitary tuple invariants, decompositions, and homotopy tables", disable_help_subcommand = true)]
pub(crate) struct Cli {
    /// Print the JSON format description for a named type and exit.
    /// Types: tuple, phases, configuration, arrangement, multiarrangement,
    /// intmatrix, chain, graded, verdict.
    #[arg(long, value_name = "TYPE", global = false)]
    schema: Option<String>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
pub(crate) enum Command {
    /// Check every matrix of a tuple file for unitarity.
    Ucheck {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Eigenvalue phases of a single unitary matrix (k = 1 tuple file).
    Eig {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Eigenvalue map of a tuple: one phase multiset per member.
    Phi {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Transport distance between two phase multisets.
    Symdist { a: PathBuf, b: PathBuf },
    /// Decide simultaneous unitary similarity of two tuples.
    Similar {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Word-length bound for the trace prefilter; AUTO = 2 n^2.
        #[arg(long, default_value = "AUTO")]
        max_word_len: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Test irreducibility via the commutant dimension.
    Irreducible {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Decompose a tuple into irreducible summands with multiplicities.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eigenspace flag configurations of unitary matrices.
    Harris {
        #[command(subcommand)]
        sub: HarrisCommand,
    },
    /// Principal-angle cosines between two planes (one plane per file).
    Angles { a: PathBuf, b: PathBuf },
    /// Contraction homotopy of a stabilized multi-arrangement.
    Homotopy {
        file: PathBuf,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Smith normal form of an integer matrix.
    Snf { file: PathBuf },
    /// Cokernel invariants of an integer matrix.
    Cokernel { file: PathBuf },
    /// Integral homology of a chain complex.
    Homology { file: PathBuf },
    /// Assemble deformation K-theory homotopy from representation-ring
    /// homotopy (built-in group tables or a graded-group file).
    Ahss {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        max_deg: u32,
    },
}

#[derive(Subcommand)]
pub(crate) enum HarrisCommand {
    /// Canonical configuration of a unitary matrix.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// The unitary matrix realizing a configuration.
    Reconstruct {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Face map d_i of a configuration.
    Face {
        file: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                std::process::exit(0);
            }
            _ => {
                eprint!("{e}");
                std::process::exit(64);
            }
        },
    };

    if let Some(kind) = cli.schema {
        match schema::describe(&kind) {
            Some(v) => {
                println!("{}", serde_json::to_string(&v).expect("schema"));
                std::process::exit(0);
            }
            None => {
                eprintln!("error: unknown schema type {kind:?}");
                std::process::exit(64);
            }
        }
    }

    let Some(command) = cli.command else {
        eprintln!("error: a subcommand is required (see --help)");
        std::process::exit(64);
    };

    match commands::run(command) {
        Ok((value, code)) => {
            println!("{}", serde_json::to_string(&value).expect("output"));
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            if let commands::CliError::Inconclusive(msg) = &e {
                let v = serde_json::json!({ "error": format!("inconclusive: {msg}") });
                println!("{}", serde_json::to_string(&v).expect("output"));
            }
            std::process::exit(e.exit_code());
        }
    }
}
