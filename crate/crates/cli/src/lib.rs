//! Batch front end for the `pointwise` library.

pub mod args;
mod commands;
pub mod report;

pub use args::Cli;
pub use commands::execute;
pub use report::{CliError, Report};

/// Runs a parsed command line and returns the report text.
pub fn run_cli(cli: &Cli) -> Result<String, CliError> {
    let text = execute(&cli.command)?.to_json();
    if let Some(path) = &cli.out {
        std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}
