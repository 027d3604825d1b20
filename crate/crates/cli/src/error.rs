use serde_json::{json, Value};
use sitekit_core::Error;

use crate::ast::Pos;
use crate::parser::Diagnostic;

/// A command that could not produce a report.
#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
    pub diagnostics: Vec<Diagnostic>,
    pub extra: Value,
}

impl CliError {
    pub fn input(kind: &str, message: impl Into<String>) -> CliError {
        CliError {
            kind: kind.to_string(),
            message: message.into(),
            exit_code: 2,
            diagnostics: Vec::new(),
            extra: Value::Null,
        }
    }

    pub fn parse(diagnostics: Vec<Diagnostic>) -> CliError {
        let first = diagnostics.first().map(|d| d.to_string()).unwrap_or_default();
        CliError {
            kind: "parse_error".into(),
            message: format!("{} diagnostic(s); first at {first}", diagnostics.len()),
            exit_code: 2,
            diagnostics,
            extra: Value::Null,
        }
    }

    /// Prefixes the message with the block a failure came from.
    pub fn within(mut self, what: &str, name: &str, pos: Pos) -> CliError {
        self.message = format!("{what} '{name}' (line {}): {}", pos.line, self.message);
        self
    }

    pub fn to_json(&self) -> Value {
        let diagnostics: Vec<Value> = self
            .diagnostics
            .iter()
            .map(|d| {
                json!({
                    "kind": d.kind,
                    "line": d.pos.line,
                    "column": d.pos.column,
                    "message": d.message,
                })
            })
            .collect();
        let mut v = json!({
            "kind": self.kind,
            "message": self.message,
            "diagnostics": diagnostics,
        });
        if let (Value::Object(m), Value::Object(extra)) = (&mut v, &self.extra) {
            m.extend(extra.clone());
        }
        v
    }

    pub fn text(&self) -> String {
        let mut s = format!("error ({}): {}\n", self.kind, self.message);
        for d in &self.diagnostics {
            s.push_str(&format!("  {d}\n"));
        }
        s
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let exit_code = match e {
            Error::HorizonTooShort(_) | Error::ClassPropertyUnverified { .. } | Error::NotASheaf(_) => 1,
            _ => 2,
        };
        let extra = match &e {
            Error::SizeGuard { what, count, limit } => {
                json!({ "what": what, "count": count, "limit": limit })
            }
            _ => Value::Null,
        };
        CliError {
            kind: e.kind().to_string(),
            message: e.to_string(),
            exit_code,
            diagnostics: Vec::new(),
            extra,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
