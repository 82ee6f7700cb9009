//! `workbench`: command-line front end over the description-file format.
//!
//! Exit codes: 0 verdict true / success, 1 verdict false or failed cross-check,
//! 2 precondition or input error, 3 budget exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use workbench_core::Error;

#[derive(Parser, Debug)]
#[command(name = "workbench", version, about = "Bounded languages, counter machines, ETOL and matrix grammars")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

/// Bounds shared by every command; echoed at the top of each report.
#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Longest word enumerated or cross-checked.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_len: usize,
    /// Exploration budget (sentential forms / configurations).
    #[arg(long, global = true, default_value_t = 100_000)]
    pub steps: usize,
    /// Longest word covered by index and ambiguity audits (defaults to --max-len).
    #[arg(long, global = true)]
    pub audit_len: Option<usize>,
    /// Index bound for finite-index constructions.
    #[arg(long, global = true, default_value_t = 2)]
    pub k: usize,
    /// Letters used to read a semilinear set as a language (e.g. `abc`).
    #[arg(long, global = true)]
    pub letters: Option<String>,
    /// Where to write the produced artifact; without it the artifact goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert an object and cross-check the result against the oracle.
    Convert {
        input: PathBuf,
        #[arg(long)]
        to: Target,
    },
    /// Decide a relation between two bounded Ginsburg specs.
    Decide {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = "equal")]
        relation: String,
        /// Check injectivity of φ up to this length when the words are not distinct letters.
        #[arg(long)]
        injective_check: Option<usize>,
    },
    /// List the words of a language up to --max-len in shortlex order.
    Enumerate {
        input: PathBuf,
        /// Read a semilinear set as a Parikh language instead of a letter-bounded one.
        #[arg(long)]
        parikh: bool,
    },
    /// Coefficient table and exact recurrence fit.
    Series {
        input: PathBuf,
        /// Largest length (or Parikh norm) tabulated.
        #[arg(long, default_value_t = 17)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SeriesMode::Length)]
        mode: SeriesMode,
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Fit only the terms `start, start+step, …` (written `start:step`).
        #[arg(long)]
        subsequence: Option<String>,
    },
    /// Bounded-evidence audits.
    Audit {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: AuditKind,
        /// Coordinate box for semi-simplicity checks.
        #[arg(long = "box", default_value_t = 8)]
        box_bound: u64,
    },
    /// Build a regular language commutatively equivalent to the input.
    Regularize {
        input: PathBuf,
        /// Print the witness automaton as a tab-separated transition table.
        #[arg(long)]
        dump: bool,
        /// Steps of the EDOL sequence examined for commutative repeats.
        #[arg(long, default_value_t = 20)]
        analyze_steps: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Ncm,
    Dcm,
    Etol,
    ReducedEtol,
    Edtol,
    Matrix,
    Reduced,
    Plain,
    NormalForm,
    Szilard,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    Length,
    Parikh,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditKind {
    Index,
    Ambiguity,
    NormalForm,
    SemiSimple,
}

/// Outcome of a command that ran to completion.
pub enum Verdict {
    True,
    False,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config;
    let result = match cli.command {
        Command::Convert { input, to } => commands::convert(&cfg, &input, to),
        Command::Decide { first, second, relation, injective_check } => {
            commands::decide(&cfg, &first, &second, &relation, injective_check)
        }
        Command::Enumerate { input, parikh } => commands::enumerate(&cfg, &input, parikh),
        Command::Series { input, n, mode, max_order, subsequence } => {
            commands::series(&cfg, &input, n, mode, max_order, subsequence.as_deref())
        }
        Command::Audit { input, kind, box_bound } => commands::audit(&cfg, &input, kind, box_bound),
        Command::Regularize { input, dump, analyze_steps } => {
            commands::regularize(&cfg, &input, dump, analyze_steps)
        }
    };
    match result {
        Ok(Verdict::True) => ExitCode::SUCCESS,
        Ok(Verdict::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}

pub type CmdResult = Result<Verdict, Error>;
