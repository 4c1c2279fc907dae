//! `scarf`: batch front end for the Scarf II spectral toolkit.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use crate::args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(scarf_core::Error),
    Io(std::io::Error),
    Encode(String),
}

impl From<scarf_core::Error> for CliError {
    fn from(e: scarf_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

impl CliError {
    /// 2 invalid arguments, 3 domain or regime error, 4 non-convergence.
    fn exit_code(&self) -> u8 {
        use scarf_core::Error::*;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(InvalidGrid(_) | EmptyRange(_)) => 2,
            CliError::Core(NonConvergence(_)) => 4,
            CliError::Core(_) => 3,
            CliError::Io(_) | CliError::Encode(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "invalid_arguments",
            CliError::Core(scarf_core::Error::NonConvergence(_)) => "non_convergence",
            CliError::Core(scarf_core::Error::InvalidGrid(_) | scarf_core::Error::EmptyRange(_)) => {
                "invalid_arguments"
            }
            CliError::Core(_) => "domain",
            CliError::Io(_) => "io",
            CliError::Encode(_) => "encoding",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Encode(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

fn out_path(command: &Command) -> Option<&std::path::Path> {
    let common = match command {
        Command::Spectrum(a) => &a.common,
        Command::Wavefunction(a) => &a.common,
        Command::Singularity(a) => &a.common,
        Command::Partner(a) => &a.common,
        Command::Scatter(a) => &a.common,
        Command::Verify(a) => &a.common,
    };
    common.out.as_deref()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli.command)
        .and_then(|text| output::emit(&text, out_path(&cli.command)).map_err(CliError::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            let report = json!({
                "error": {
                    "kind": e.kind(),
                    "message": e.message(),
                    "exit_code": e.exit_code(),
                }
            });
            eprintln!("{report}");
            ExitCode::from(e.exit_code())
        }
    }
}
