//! Command-line front end for `stimsig-core`.
//!
//! Exit codes: 0 success, 1 internal consistency failure, 2 usage error,
//! 3 I/O error.

pub mod commands;
mod error;
pub mod literal;
pub mod output;

use std::fs;
use std::io::Write;

pub use commands::{execute, Cli, Command};
pub use error::CliError;
pub use output::{Format, OutputRecord, Row};

/// Runs a parsed invocation: builds the document, writes it to `--out` or
/// stdout, then reports any consistency failure.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let outcome = execute(&cli.command)?;
    let text = outcome.record.render(cli.format);
    match &cli.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    match outcome.inconsistency {
        Some(msg) => Err(CliError::Consistency(msg)),
        None => Ok(()),
    }
}
