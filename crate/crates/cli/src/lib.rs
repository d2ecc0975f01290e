//! File formats, threaded audit drivers and the `tightspan` command line on
//! top of `tightspan-core`.

pub mod args;
mod commands;
pub mod config;
pub mod format;
pub mod parallel;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use commands::run;

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    /// The checked property does not hold.
    pub const PROPERTY_FAILS: u8 = 1;
    pub const USAGE: u8 = 2;
    /// IO failure, exhausted budget or internal limit.
    pub const RESOURCE: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}: {1}")]
    Parse(String, format::FormatError),
    #[error("{0}")]
    Usage(String),
}

/// Exit status for an error that escaped a command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<CliError>() {
        return match e {
            CliError::Io(..) => exit::RESOURCE,
            CliError::Parse(..) | CliError::Usage(_) => exit::USAGE,
        };
    }
    match err.downcast_ref::<tightspan_core::Error>() {
        Some(tightspan_core::Error::ResourceLimit(_) | tightspan_core::Error::Internal(_)) => exit::RESOURCE,
        _ => exit::USAGE,
    }
}

/// Parses `argv`, runs the command and writes the report to `out`.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { exit::USAGE } else { exit::OK };
        }
    };
    match run(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}
