use std::fmt;

use serde_json::{json, Map, Value};

use kktlab_core::Error;

pub const SCHEMA: &str = "kktlab/1";

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Usage(String),
    /// A construction or verification step failed; exit code 1.
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::UnsupportedSize(_)
            | Error::NodeOutOfRange { .. }
            | Error::InvalidGcm(_)
            | Error::KindMismatch(..)
            | Error::SlotOutOfRange { .. }
            | Error::NotFinite(_)
            | Error::DimensionMismatch { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

/// What a command produces before it is wrapped into a report.
pub struct Outcome {
    pub results: Value,
    pub passed: bool,
}

impl Outcome {
    pub fn new(results: Value, passed: bool) -> Self {
        Outcome { results, passed }
    }
}

pub fn envelope(command: &str, inputs: Value, seed: u64, outcome: &Outcome, timing_ms: u128) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "results": outcome.results,
        "passed": outcome.passed,
        "timing_ms": timing_ms,
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn rows(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => flatten_object(prefix, m, out),
        other => out.push((prefix.to_string(), cell(other))),
    }
}

fn flatten_object(prefix: &str, m: &Map<String, Value>, out: &mut Vec<(String, String)>) {
    for (k, v) in m {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        rows(&key, v, out);
    }
}

/// Two-column text rendering of a report.
pub fn table(report: &Value) -> String {
    let mut out = Vec::new();
    rows("", report, &mut out);
    let width = out.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    out.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}
