//! Batch front end for `forests-core`: resolves a request, evaluates it over
//! the requested values of `n` and renders a JSON, CSV or plain-text document.
//!
//! Every document has the shape `{family, command, rows: [...]}` with rows in
//! ascending `n`. Integers that can outgrow 64 bits are decimal strings.

pub mod args;
mod commands;
pub mod output;

use std::fmt;

pub use args::{Cli, Command, CommonArgs, Format, NSelection, Request, PRECISION_ENV};
pub use commands::{evaluate, Document, Row};

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
/// A proven identity failed to hold.
pub const EXIT_INVARIANT: u8 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub status: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: String) -> Self {
        CliError {
            status: EXIT_DOMAIN,
            message,
        }
    }
}

impl From<forests_core::Error> for CliError {
    fn from(e: forests_core::Error) -> Self {
        let status = if e.is_invariant_violation() {
            EXIT_INVARIANT
        } else {
            EXIT_DOMAIN
        };
        CliError {
            status,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Result of running one request: what goes to stdout and stderr.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: u8,
    /// Empty unless `status` is 0.
    pub stdout: String,
    pub stderr: Vec<String>,
}

pub fn run(request: &Request) -> Outcome {
    let mut warnings = Vec::new();
    let rendered =
        evaluate(request, &mut warnings).and_then(|doc| output::render(&doc, request.format));
    match rendered {
        Ok(stdout) => Outcome {
            status: EXIT_OK,
            stdout,
            stderr: warnings
                .into_iter()
                .map(|w| format!("warning: {w}"))
                .collect(),
        },
        Err(e) => {
            let mut stderr: Vec<String> = warnings
                .into_iter()
                .map(|w| format!("warning: {w}"))
                .collect();
            stderr.push(format!("error: {e}"));
            Outcome {
                status: e.status,
                stdout: String::new(),
                stderr,
            }
        }
    }
}
