//! Command-line front end for `orthobound-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod output;
pub mod settings;
pub mod verify;

use std::fmt;
use std::io::Write;

use orthobound_core::Error;

pub use args::Cli;
pub use settings::Settings;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration; exit 2.
    Usage(String),
    /// The computation itself failed; exit 3.
    Numeric(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Numeric(e) => write!(f, "numerical failure: {e}"),
            CliError::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Domain errors are always caused by an argument the user supplied.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// What a successful run reports back to the shell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    /// A verification suite ran to completion with failing cases.
    ChecksFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::ChecksFailed => 1,
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let settings = Settings::from_args(&cli.global)?;
    commands::dispatch(&cli.command, &settings, out)
}
