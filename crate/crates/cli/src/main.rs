//! `pep2gi`: batch front end for code equivalence, classification,
//! projector graphs and code counts.
//!
//! Exit codes: 0 success (or "equivalent"), 1 "not equivalent" / failed
//! comparison, 2 "not GI-reducible", 3 any error including bad usage.

mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_NOT_REDUCIBLE: u8 = 2;
pub const EXIT_ERROR: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "pep2gi", version, about = "Permutation equivalence of linear codes via projector graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Human-readable output (tables for count/census, indented JSON otherwise).
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Worker threads for the census (results do not depend on it).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    /// Report timings on standard error.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether two codes are permutation equivalent.
    Solve {
        code1: PathBuf,
        code2: PathBuf,
        /// Also run the exhaustive search and report its permutation.
        #[arg(long)]
        oracle: bool,
        /// Longest length the exhaustive search accepts.
        #[arg(long, default_value_t = pep2gi::pep::DEFAULT_BRUTE_FORCE_CAP, value_parser = positive)]
        brute_force_cap: usize,
    },
    /// Classify a code's hull and GI-reducibility.
    Classify { code: PathBuf },
    /// Projector matrix of a code for M = aI + bJ.
    Projector {
        code: PathBuf,
        #[command(flatten)]
        form: FormArgs,
    },
    /// Isomorphism of two weighted digraphs.
    Iso { graph1: PathBuf, graph2: PathBuf },
    /// Closed-form counts for [n, k]_q codes.
    Count(CountArgs),
    /// Exhaustive census of all [n, k]_q codes.
    Census {
        #[command(flatten)]
        params: CountArgs,
        /// Classify against diag(1, …, 1, τ) of type +1 or -1.
        #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["a", "b"])]
        eps: Option<i8>,
        /// Classify against aI + bJ (b defaults to 0).
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        b: Option<u64>,
        /// Compare the census with the closed forms; exit 1 on mismatch.
        #[arg(long)]
        compare: bool,
        /// Largest number of subspaces to visit.
        #[arg(long, env = "PEP2GI_CENSUS_CAP", default_value_t = pep2gi::census::DEFAULT_CENSUS_CAP,
              value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Projector graph of a code as a plain undirected edge list.
    ExportGraph {
        code: PathBuf,
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::EdgeList)]
        format: GraphFormat,
    },
    /// Run built-in consistency checks.
    SelfTest {
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct FormArgs {
    #[arg(long, default_value_t = 1)]
    pub a: u64,
    #[arg(long, default_value_t = 0)]
    pub b: u64,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub q: u64,
    /// Modulus coefficients, constant term first, e.g. `1,0,1` for F_9.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    /// `n m` header then one `u v` line per edge.
    EdgeList,
    /// The weighted projector digraph as graph JSON.
    Json,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
