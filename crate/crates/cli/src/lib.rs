//! `witt-lab`: text and JSON front end for `witt-core`.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive it
//! in-process.

pub mod args;
mod commands;
pub mod sample;
pub mod selftest;

use clap::Parser;
use serde_json::{json, Value};
use witt_core::WittError;

pub const SCHEMA_VERSION: &str = "witt-lab/1";

/// Exit code plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values: exit 2.
    Usage(String),
    /// Algebra errors: exit 1.
    Domain(WittError),
    /// Unreadable input files: exit 1.
    Io(String),
}

impl From<WittError> for CliError {
    fn from(e: WittError) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Domain(e) => e.code(),
            CliError::Io(_) => "IoError",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// A command's result in both renderings.
pub struct Report {
    pub command: &'static str,
    pub signature: Option<String>,
    pub text: String,
    pub json: Value,
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let json_mode = cli.json;
    let name = commands::name(&cli.command);
    match commands::execute(cli.command) {
        Ok((report, status)) => {
            let stdout = if json_mode {
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": report.command,
                    "signature": report.signature,
                    "result": report.json,
                });
                format!("{}\n", serde_json::to_string_pretty(&envelope).expect("serializable"))
            } else {
                let mut t = report.text;
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            };
            Outcome { code: status, stdout, stderr: String::new() }
        }
        Err(err) => {
            let stderr = format!("error[{}]: {}\n", err.code(), err.message());
            let stdout = if json_mode {
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": name,
                    "signature": Value::Null,
                    "error": { "code": err.code(), "message": err.message() },
                });
                format!("{}\n", serde_json::to_string_pretty(&envelope).expect("serializable"))
            } else {
                String::new()
            };
            Outcome { code: err.exit_code(), stdout, stderr }
        }
    }
}
