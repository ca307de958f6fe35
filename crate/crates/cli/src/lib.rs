//! `waring` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification finds an unexpected
//! counterexample, 2 on usage or input errors.

pub mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use waring_core::verify::{GridRange, RatioSubject};

pub use report::{Format, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "waring", version, about = "Exact Waring ranks of monomials and coprime sums")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Omit timestamps and timings so repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,

    /// Worker threads for verification.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

/// An `(n, d)` grid given as `--n a[:b] --d c[:e]`.
#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Number of variables, a value or an inclusive range `a:b`.
    #[arg(long)]
    pub n: GridRange,

    /// Degree, a value or an inclusive range `a:b`.
    #[arg(long)]
    pub d: GridRange,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank of a monomial or of a sum of pairwise coprime monomials.
    Rank {
        /// Comma-separated exponents, e.g. `1,2,2`.
        #[arg(long, conflicts_with = "sum", required_unless_present = "sum")]
        monomial: Option<String>,
        /// Blocks joined by `|`, e.g. `1,2|1,2`.
        #[arg(long)]
        sum: Option<String>,
        /// Ambient variable count (defaults to the number of listed exponents).
        #[arg(long)]
        n: Option<u32>,
    },
    /// Generic rank over a grid.
    GenericRank(GridArgs),
    /// Maximum monomial rank with a witness.
    MaxRank {
        #[command(flatten)]
        grid: GridArgs,
        /// Brute force over all monomials instead of the construction.
        #[arg(long)]
        oracle: bool,
    },
    /// Maximum rank of a sum of pairwise coprime monomials.
    MaxRankSum {
        #[command(flatten)]
        grid: GridArgs,
        /// Brute force over all coprime sums.
        #[arg(long)]
        oracle: bool,
        /// Only sums using every variable (implies --oracle).
        #[arg(long)]
        spanning: bool,
    },
    /// Upper bounds on the maximum rank.
    Bounds(GridArgs),
    /// List every monomial (or coprime sum) of degree d in n variables.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Enumerate coprime sums instead of monomials.
        #[arg(long)]
        sums: bool,
        /// Only sums using every variable.
        #[arg(long, requires = "sums")]
        spanning: bool,
    },
    /// Exhaustively check a claim over a grid.
    Verify {
        /// theorem-monomial, theorem-coprime, lemma-slope, ineq-agm,
        /// ineq-pure-power, or slope-step.
        #[arg(long)]
        claim: String,
        #[arg(long)]
        n_range: Option<GridRange>,
        #[arg(long)]
        d_range: Option<GridRange>,
    },
    /// Exact ratios of maximum to generic rank and their limits.
    Asymptotics {
        /// d-limit (fixed n, growing d) or n-limit (fixed d, growing n).
        #[arg(long)]
        mode: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Comma-separated degrees for d-limit mode.
        #[arg(long, value_delimiter = ',')]
        d_samples: Vec<u32>,
        #[arg(long)]
        n_max: Option<u32>,
        /// monomial or coprime (d-limit mode).
        #[arg(long, default_value = "monomial")]
        which: RatioSubject,
    },
    /// Regenerate a reference table: exceptional-44-53, coprime-43, known-examples.
    Table {
        #[arg(long)]
        name: String,
    },
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<waring_core::WaringError> for CliError {
    fn from(e: waring_core::WaringError) -> CliError {
        let message = match e {
            waring_core::WaringError::UnsupportedRegime { .. } => format!("{e} (pass --oracle)"),
            _ => e.to_string(),
        };
        CliError::usage(message)
    }
}

/// Runs a parsed command, returning the rendered report and the exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let (mut doc, code) = commands::dispatch(cli)?;
    if !cli.deterministic {
        doc.generated_at = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    }
    Ok((doc.render(cli.format), code))
}
