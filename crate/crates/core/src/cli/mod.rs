//! Command-line driver: reads one JSON document, runs a pipeline and prints
//! a table plus a JSON trailer (or only JSON with `--json`).
//!
//! Exit codes: 0 success, 2 schema error, 3 failed invariant, 4
//! inconclusive weight classification.

mod commands;
pub mod docs;
mod element;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

pub use commands::{cmd_bch, cmd_cech, cmd_present, cmd_weights};
pub use element::parse_element;
pub use render::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Invariant(m) | CliError::Inconclusive(m) => m,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::Inconclusive(_) => EXIT_INCONCLUSIVE,
        }
    }
}

/// A finished command: the JSON report and the exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, exit_code: EXIT_OK }
    }

    pub fn failed(command: &str, err: &CliError) -> Self {
        let status = match err {
            CliError::Schema(_) => "schema_error",
            CliError::Invariant(_) => "invariant_violation",
            CliError::Inconclusive(_) => "inconclusive",
        };
        Outcome {
            report: json!({"command": command, "status": status, "error": err.message()}),
            exit_code: err.exit_code(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "malcev", version, about = "Nilpotent Lie algebras, weights and cosimplicial cohomology from finite data")]
pub struct Cli {
    /// Print only the JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quadratic presentation from a cohomology or open_variety document.
    Present {
        file: PathBuf,
        /// Nilpotency class.
        #[arg(short = 'n', long = "class", default_value_t = 5)]
        class: usize,
        /// Include weight-graded dimensions.
        #[arg(long)]
        weights: bool,
    },
    /// Weight decomposition from a frobenius document.
    Weights {
        file: PathBuf,
        /// Prime power q (overrides the document).
        #[arg(long)]
        q: Option<u64>,
        /// Relative tolerance for root norms.
        #[arg(long, default_value_t = crate::weights::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Nilpotency class when the document describes an algebra.
        #[arg(short = 'n', long = "class", default_value_t = 5)]
        class: usize,
    },
    /// Čech cohomology of a cech document.
    #[command(alias = "cohomology")]
    Cech {
        file: PathBuf,
        /// Highest cohomological degree computed.
        #[arg(short = 'm', long = "level", default_value_t = crate::cosimplicial::DEFAULT_LEVEL)]
        level: usize,
    },
    /// log(exp x exp y) in a free nilpotent algebra.
    Bch {
        x: String,
        y: String,
        #[arg(short = 'n', long = "class", default_value_t = 5)]
        class: usize,
        /// Comma-separated generator names.
        #[arg(long, default_value = "x,y")]
        generators: String,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))
}

/// Run a parsed command and produce its outcome.
pub fn execute(cli: &Cli) -> Outcome {
    let (name, result) = match &cli.command {
        Command::Present { file, class, weights } => ("present", read(file).and_then(|t| cmd_present(&t, *class, *weights))),
        Command::Weights { file, q, tol, class } => ("weights", read(file).and_then(|t| cmd_weights(&t, *q, *tol, *class))),
        Command::Cech { file, level } => ("cech", read(file).and_then(|t| cmd_cech(&t, *level))),
        Command::Bch {
            x,
            y,
            class,
            generators,
        } => ("bch", cmd_bch(x, y, *class, generators)),
    };
    result.unwrap_or_else(|e| Outcome::failed(name, &e))
}

/// Text written to standard output for an outcome.
pub fn format_output(outcome: &Outcome, json_only: bool) -> String {
    let trailer = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    if json_only {
        format!("{trailer}\n")
    } else {
        format!("{}\n\n{trailer}\n", render(&outcome.report))
    }
}

/// Entry point shared by the binary: parse arguments, run, print, and
/// return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_SCHEMA } else { EXIT_OK };
        }
    };
    let outcome = execute(&cli);
    if let Some(err) = outcome.report.get("error").and_then(Value::as_str) {
        log::error!("{err}");
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(format_output(&outcome, cli.json).as_bytes());
    outcome.exit_code
}
