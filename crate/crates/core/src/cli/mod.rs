//! Command-line front end.
//!
//! [`run`] parses an argument vector and returns the rendered output and the
//! exit code without touching the process, so the binary, the tests and the C
//! interface share one code path.

mod args;
mod commands;

use std::ffi::OsString;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub use args::{DEFAULT_DEPTH, DEFAULT_SAMPLES, DEFAULT_SEED};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    LawFailure,
    PreconditionFailure,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::LawFailure => 2,
            Status::PreconditionFailure => 3,
            Status::Error => 4,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Ok
        } else {
            Status::LawFailure
        }
    }
}

/// Outcome of one subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub status: Status,
    /// Seed, sample count, depth and structure as used.
    pub header: Map<String, Value>,
    pub payload: Value,
}

impl CommandResult {
    pub fn new(command: &str, status: Status, header: Map<String, Value>, payload: Value) -> Self {
        CommandResult {
            command: command.to_string(),
            status,
            header,
            payload,
        }
    }

    pub(crate) fn failed(command: &str, header: Map<String, Value>, e: &Error) -> Self {
        let status = if e.is_precondition() {
            Status::PreconditionFailure
        } else {
            Status::Error
        };
        let payload = json!({ "error": error_kind(e), "message": e.to_string() });
        CommandResult::new(command, status, header, payload)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// `key  value` rows for the header and every leaf of the payload.
    pub fn to_table(&self) -> String {
        let mut rows = vec![
            ("command".to_string(), self.command.clone()),
            ("status".to_string(), json_text(&serde_json::to_value(self.status).expect("status"))),
        ];
        for (k, v) in &self.header {
            flatten(&format!("header.{k}"), v, &mut rows);
        }
        flatten("payload", &self.payload, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn json_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&format!("{prefix}.{k}"), x, rows);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, rows);
            }
        }
        other => rows.push((prefix.to_string(), json_text(other))),
    }
}

/// Name of the error variant, e.g. `NoNullCertificate`.
pub fn error_kind(e: &Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

/// Rendered output of an invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { Status::Error.exit_code() } else { 0 };
            return if code == 0 {
                Invocation { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                Invocation { exit_code: code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json = cli.command.json();
    let result = commands::execute(&cli.command);
    let stdout = if json { result.to_json() + "\n" } else { result.to_table() };
    let stderr = match result.status {
        Status::PreconditionFailure | Status::Error => format!(
            "error: {}\n",
            result.payload.get("message").map(json_text).unwrap_or_default()
        ),
        _ => String::new(),
    };
    Invocation {
        exit_code: result.status.exit_code(),
        stdout,
        stderr,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(error_kind(&Error::ROne), "ROne");
        assert_eq!(error_kind(&Error::NoNullCertificate("x".into())), "NoNullCertificate");
        assert_eq!(error_kind(&Error::IndexBeforeStart { index: 0, start: 1 }), "IndexBeforeStart");
    }

    #[test]
    fn table_has_payload_leaves() {
        let r = CommandResult::new(
            "x",
            Status::Ok,
            Map::new(),
            json!({"a": {"b": "1", "c": [true, 2]}, "d": []}),
        );
        let t = r.to_table();
        for key in ["payload.a.b", "payload.a.c.0", "payload.a.c.1", "payload.d"] {
            assert!(t.contains(key), "{t}");
        }
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["hemiring", "nonsense"]).exit_code, 4);
        assert_eq!(run(["hemiring", "--help"]).exit_code, 0);
        assert_eq!(run(["hemiring", "laws", "--structure", "reals"]).exit_code, 4);
    }
}
