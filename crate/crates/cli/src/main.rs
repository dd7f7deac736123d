//! `authom`: catalog queries, class arithmetic, action matrices and the
//! verification suites from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 malformed input,
//! 3 well-formed input that is mathematically invalid.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "authom", version, about = "Exact Aut(F_r) action on the rational homology of G^r")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "AUTHOM_FORMAT", default_value = "text")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ContextArgs {
    /// Group such as `A2`, `B3xG2` or `deg[3,5,7]`.
    #[arg(long)]
    pub group: String,

    /// Free group rank.
    #[arg(short = 'r', long = "rank", value_name = "R")]
    pub r: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Letter word, e.g. `R(1,3) Li(2,1) s(1,2) v(3)`; computed by Path A.
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,

    /// Automorphism as inline JSON `{"r":..,"images":[..]}` or a path to a
    /// JSON file; computed by Path B.
    #[arg(long)]
    pub tuple: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poincaré polynomial of G^r.
    Poincare(ContextArgs),

    /// Apply an automorphism to a homology class.
    Act {
        #[command(flatten)]
        context: ContextArgs,
        #[command(flatten)]
        source: SourceArgs,
        /// Class such as `t1_1 t1_3 - 2*t2_1`.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },

    /// Matrix of an automorphism on one degree or on the whole ring.
    Matrix {
        #[command(flatten)]
        context: ContextArgs,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, conflicts_with = "full", required_unless_present = "full")]
        degree: Option<u64>,
        /// All 2^(n·r) monomials in bit-set order.
        #[arg(long)]
        full: bool,
        /// Write the JSON matrix to a file instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Run the verification suites; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Single group.
        #[arg(long, conflicts_with = "groups", required_unless_present = "groups")]
        group: Option<String>,
        /// Comma-separated groups; rank invariance compares them directly.
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<String>>,
        #[arg(short = 'r', long = "rank", value_name = "R")]
        r: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        max_len: usize,
    },

    /// Catalog listings.
    Groups {
        #[command(subcommand)]
        command: GroupsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupsCommand {
    /// Families with their degree sequences and dimensions.
    List {
        /// Largest rank shown for the classical families.
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Semantic(_) => 3,
        }
    }
}
