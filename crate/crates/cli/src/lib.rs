//! The `cuntz` command line: JSON in, deterministic JSON or text reports out.
//!
//! Exit codes: 0 when the analysis ran (whatever its verdict), 2 when the
//! input parsed but failed validation, 1 when it could not be read or parsed.

mod commands;
pub mod output;

use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::Value;

#[derive(Debug, Parser)]
#[command(name = "cuntz", version, about = "Atomic and permutative representations of the Cuntz algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a finitely correlated tuple {"N", "d", "Z"}.
    AnalyzeFincorr {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        /// Longest cycle searched for atoms (default: d).
        #[arg(long)]
        max_period: Option<usize>,
    },
    /// Check a filter bank {"N", "filters"} and certify its monomial atoms.
    AnalyzeQmf {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        cutoff: usize,
        #[arg(long)]
        max_period: Option<usize>,
    },
    /// Extreme cycles, spectra and encodings of a Hadamard triple {"R", "B", "L"}.
    HadamardSpectrum {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[arg(long, default_value_t = 30)]
        depth: u32,
    },
    /// Walsh basis of a unitary {"N", "A"} with constant first row.
    Walsh {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Compare two descriptors, or two reports that contain one.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Digit encodings E(λ) for a Hadamard triple.
    EncodeWord {
        input: PathBuf,
        #[arg(required = true, allow_negative_numbers = true)]
        lambdas: Vec<i64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Repeat the checks in exact arithmetic over Q(i, √R).
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unparsable input.
    Input(String),
    /// Parsed input that the analysis rejects.
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Validation(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Validation(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

/// A finished run: the report, and the reason when the input failed validation.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub rendered: String,
    pub failure: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.failure.is_some() {
            2
        } else {
            0
        }
    }
}

pub(crate) fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses `text`, reporting the offending field path on schema errors.
pub(crate) fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path.is_empty() || path == "." {
            CliError::Input(format!("{origin}: {inner}"))
        } else {
            CliError::Input(format!("{origin}: at {path}: {inner}"))
        }
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (report, failure, format) = commands::dispatch(&cli.command)?;
    let report = output::canonical(report);
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&report).map_err(|e| CliError::Input(e.to_string()))?,
        Format::Text => output::render_text(&report),
    };
    Ok(Outcome { report, rendered, failure })
}
