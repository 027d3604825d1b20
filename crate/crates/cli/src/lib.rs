//! Command-line workbench: workspace files, commands and reports.

pub mod ast;
pub mod commands;
pub mod error;
pub mod parser;
pub mod render;
pub mod session;

use clap::Parser as _;
use serde_json::{json, Value};
use sitekit_core::Budget;

pub use ast::Workspace;
pub use commands::{Cli, SCHEMA_VERSION};
pub use error::CliError;
pub use parser::{parse_workspace, Diagnostic, DiagnosticKind};

/// What a run writes and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn envelope(command: &str, status: &str, code: i32) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "status": status,
        "exit_code": code,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn error_output(command: &str, json_mode: bool, e: &CliError) -> Output {
    if json_mode {
        let mut v = envelope(command, "error", e.exit_code);
        v["error"] = e.to_json();
        Output {
            code: e.exit_code,
            stdout: pretty(&v),
            stderr: String::new(),
        }
    } else {
        Output {
            code: e.exit_code,
            stdout: String::new(),
            stderr: e.text(),
        }
    }
}

/// Runs one command. `budget_spec` is the value of `SITEKIT_BUDGET`, if set.
pub fn run<I, T>(args: I, budget_spec: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let err = CliError::input("usage", e.to_string().trim_end());
            return error_output("unknown", json_mode, &err);
        }
    };
    let command = cli.command.name();
    let budget = match budget_spec.map(str::parse::<Budget>) {
        None => Budget::default(),
        Some(Ok(b)) => b,
        Some(Err(msg)) => {
            let err = CliError::input("budget", format!("SITEKIT_BUDGET: {msg}"));
            return error_output(command, cli.json, &err);
        }
    };
    match commands::execute(&cli, budget) {
        Ok(report) => {
            let code = if report.passed { 0 } else { 1 };
            if cli.json {
                let mut v = envelope(command, if report.passed { "ok" } else { "failed" }, code);
                if let Value::Object(m) = &mut v {
                    m.extend(report.data);
                }
                Output {
                    code,
                    stdout: pretty(&v),
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: report.text,
                    stderr: String::new(),
                }
            }
        }
        Err(e) => error_output(command, cli.json, &e),
    }
}
