//! Command-line front end for `qappell-core`: polynomial tables, number
//! sequences, verification reports and their file formats.

pub mod args;
pub mod error;
pub mod formats;
pub mod run;

pub use args::{Cli, Command};
pub use error::CliError;
pub use run::{execute, Outcome};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "QAPPELL_OUT_DIR";
