use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qappell_core::Rational;

#[derive(Debug, Parser)]
#[command(name = "qappell", version, about = "Exact tables and identity checks for 2D q-Appell polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the polynomials A_0..A_N of each family at each q.
    Table(TableArgs),
    /// Print the numbers c_0..c_N (q-exponential normalization).
    Numbers(TableArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Write a table, number sequence or report to a file.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Selection {
    /// Family names (bernoulli, euler, genocchi, custom) or `all`, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub family: Vec<String>,

    /// Values of q as exact rationals, comma separated.
    #[arg(long = "q", value_delimiter = ',', allow_hyphen_values = true, default_value = "1/2,2/3,1,3/2,2")]
    pub qs: Vec<Rational>,

    /// Largest polynomial index N.
    #[arg(long, default_value_t = 12)]
    pub degree: usize,

    /// JSON file with the coefficients c_0..c_M of a custom family, as "p/q" strings.
    #[arg(long)]
    pub aq: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub selection: Selection,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long, value_enum, default_value_t = SuiteChoice::All)]
    pub suite: SuiteChoice,

    /// Search the full space of recurrence readings.
    #[arg(long, value_enum, default_value_t = Toggle::Off)]
    pub variants: Toggle,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub selection: Selection,

    #[command(flatten)]
    pub suites: SuiteArgs,

    /// Verify the tables in this JSON file instead of building them.
    #[arg(long)]
    pub table: Option<PathBuf>,

    /// Report path; defaults to report.json in $QAPPELL_OUT_DIR, else standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[arg(value_enum)]
    pub what: Artifact,

    #[command(flatten)]
    pub selection: Selection,

    #[command(flatten)]
    pub suites: SuiteArgs,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Output file; defaults to <what>.<ext> in $QAPPELL_OUT_DIR or the current directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Latex => "tex",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteChoice {
    Core,
    Theorems,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Toggle {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Artifact {
    Table,
    Numbers,
    Report,
}

impl Artifact {
    pub fn name(self) -> &'static str {
        match self {
            Artifact::Table => "table",
            Artifact::Numbers => "numbers",
            Artifact::Report => "report",
        }
    }
}
