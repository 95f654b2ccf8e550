//! Batch front end for the `qbundle` engine.

pub mod commands;
pub mod config;
pub mod render;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{pick, JobConfig};
use crate::render::Format;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Usage,
    Inconclusive,
    Integrity,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Usage => 2,
            Outcome::Inconclusive => 3,
            Outcome::Integrity => 4,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Bad or missing input, reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Parser)]
#[command(name = "qbundle", version, about = "Exact computations with quantized enveloping algebras, quantum groups and quantum homogeneous bundles")]
pub struct Cli {
    /// TOML job file; command-line flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output format: text, json or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Directory of the content-addressed result cache.
    #[arg(long, global = true, env = "QBUNDLE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build W(λ), print its weights and quantum dimension, and check the relations.
    Irrep(IrrepArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Per-label dimensions of the section space of a Levi module.
    Sections(SectionsArgs),
    /// Holomorphic sections of the bundle of the parabolic module V_μ.
    BorelWeil(BorelWeilArgs),
    /// Frobenius reciprocity between W(λ) and the Levi module V_μ.
    Frobenius(FrobeniusArgs),
    /// Haar integral of the product of two coefficient expressions.
    Haar(HaarArgs),
}

#[derive(Debug, Args)]
pub struct IrrepArgs {
    /// A1, A2, A3 or B2.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Highest weight in fundamental coordinates, e.g. `1,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (comma separated); all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub check: Vec<String>,
    /// quick or full.
    #[arg(long)]
    pub grid: Option<String>,
    /// Restrict the report to one algebra; with `--check schur`, print the
    /// per-index table instead.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Largest label height for the Schur table.
    #[arg(long)]
    pub max_weight: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SectionsArgs {
    #[arg(long)]
    pub algebra: Option<String>,
    /// Simple roots of the Levi factor, 1-based and comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Highest weight of the Levi module, or `trivial`.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    /// Truncation height.
    #[arg(long)]
    pub trunc: Option<u32>,
    /// Impose invariance under the whole parabolic subalgebra.
    #[arg(long)]
    pub holomorphic: bool,
    /// Include the section bases in JSON output.
    #[arg(long)]
    pub with_sections: bool,
}

#[derive(Debug, Args)]
pub struct BorelWeilArgs {
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Highest weight of V_μ (Θ-dominant).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Truncation height; defaults to the smallest height that decides the answer.
    #[arg(long)]
    pub trunc: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FrobeniusArgs {
    #[arg(long)]
    pub algebra: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    /// Highest weight λ of W(λ).
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Highest weight of the Levi module V_μ.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long)]
    pub trunc: Option<u32>,
}

#[derive(Debug, Args)]
pub struct HaarArgs {
    #[arg(long)]
    pub algebra: Option<String>,
    /// Two expressions such as `t(1)[1,1]` and `star t(1)[1,1]`.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub pair: Vec<String>,
    /// Also print the value at this positive rational v.
    #[arg(long)]
    pub v0: Option<String>,
}

/// Result of one invocation: what to print and how to exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub outcome: Outcome,
}

/// Settings shared by all commands after merging flags and the job file.
pub struct Resolved {
    pub file: JobConfig,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

impl Resolved {
    fn new(cli: &Cli) -> anyhow::Result<Self> {
        let file = match &cli.config {
            Some(p) => JobConfig::load(p).map_err(|e| usage(format!("{e:#}")))?,
            None => JobConfig::default(),
        };
        let format = pick(&cli.format, &file.format)
            .unwrap_or_else(|| "text".into())
            .parse()
            .map_err(usage)?;
        let cache_dir = pick(&cli.cache_dir, &file.cache_dir);
        Ok(Resolved { file, format, cache_dir })
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run_from<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let outcome = if e.use_stderr() { Outcome::Usage } else { Outcome::Pass };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Run { stdout: String::new(), stderr: text, outcome }
            } else {
                Run { stdout: text, stderr: String::new(), outcome }
            };
        }
    };
    match Resolved::new(&cli).and_then(|r| commands::dispatch(&cli.command, &r)) {
        Ok((stdout, outcome)) => Run {
            stdout,
            stderr: String::new(),
            outcome,
        },
        Err(e) => Run {
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
            outcome: classify(&e),
        },
    }
}

fn classify(e: &anyhow::Error) -> Outcome {
    if e.downcast_ref::<UsageError>().is_some() {
        return Outcome::Usage;
    }
    match e.downcast_ref::<qbundle::Error>() {
        Some(qbundle::Error::Integrity(_)) => Outcome::Integrity,
        Some(
            qbundle::Error::Parse(_)
            | qbundle::Error::UnsupportedAlgebra(_)
            | qbundle::Error::RankMismatch { .. }
            | qbundle::Error::NotDominant(_)
            | qbundle::Error::IndexOutOfRange(_)
            | qbundle::Error::BadSpecialization(_),
        ) => Outcome::Usage,
        _ => Outcome::Fail,
    }
}
