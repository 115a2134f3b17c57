use std::io::Read;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] fmb_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for failed verification, 2 for everything caused by the input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(fmb_core::Error::Verification(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// The result of one command before it is wrapped and written.
pub struct Outcome {
    pub passed: bool,
    pub result: Value,
}

impl Outcome {
    pub fn pass(result: Value) -> Self {
        Outcome { passed: true, result }
    }

    pub fn new(passed: bool, result: Value) -> Self {
        Outcome { passed, result }
    }
}

/// Reads JSON from `path`, or stdin when no path is given.
pub fn read_json(path: Option<&Path>) -> CliResult<Value> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| invalid(format!("malformed JSON: {e}")))
}

/// Hex SHA-256 of the compact serialization (keys are sorted).
pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(serde_json::to_string(v).expect("serializable").as_bytes()))
}

pub fn envelope(command: &str, input: &Value, outcome: &Outcome) -> Value {
    json!({
        "command": command,
        "input_digest": digest(input),
        "status": if outcome.passed { "pass" } else { "fail" },
        "result": outcome.result,
    })
}

pub fn write_json(out: Option<&PathBuf>, v: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(v).expect("serializable");
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

pub fn field<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| invalid(format!("missing field '{key}'")))
}

pub fn usize_field(v: &Value, key: &str) -> CliResult<usize> {
    field(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| invalid(format!("'{key}' must be a non-negative integer")))
}
