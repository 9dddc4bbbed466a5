//! Scenario parsing, execution and artifact emission for the `covent` binary.

pub mod args;
mod output;
mod scenario;

use std::path::Path;

pub use args::{Cli, Format};
pub use output::Artifact;
pub use scenario::{execute, Scenario, StateSource};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 2,
            Self::Numerical(_) => 3,
            Self::Io(_) => 4,
        }
    }
}

impl From<covent::Error> for CliError {
    fn from(e: covent::Error) -> Self {
        match e {
            covent::Error::Numerical(_) => Self::Numerical(e.to_string()),
            _ => Self::Validation(e.to_string()),
        }
    }
}

/// Validate, compute, write. A non-converged optimization still writes its
/// artifact before reporting the failure.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let scenario = Scenario::from_cli(&cli)?;
    let artifact = execute(&scenario)?;
    let text = artifact.render(cli.format)?;
    match &cli.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    match artifact.failure {
        Some(msg) => Err(CliError::Numerical(msg)),
        None => Ok(()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
