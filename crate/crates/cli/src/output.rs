//! Writing results as JSON or CSV, and the JSON-lines results log.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::args::Format;
use crate::error::CliError;

/// One solved case, ready for either output format.
#[derive(Debug, Clone)]
pub struct Payload {
    pub json: Value,
    pub csv_header: String,
    pub csv_body: String,
    /// A verification ran and failed; the payload still describes it.
    pub check_failed: bool,
}

impl Payload {
    pub fn new<T: Serialize, R: Serialize>(record: &T, rows: &[R]) -> Result<Self, CliError> {
        let (csv_header, csv_body) = csv_text(rows)?;
        Ok(Self {
            json: serde_json::to_value(record)?,
            csv_header,
            csv_body,
            check_failed: false,
        })
    }
}

fn csv_text<R: Serialize>(rows: &[R]) -> Result<(String, String), CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))?;
    Ok(match text.split_once('\n') {
        Some((h, b)) => (format!("{h}\n"), b.to_string()),
        None => (String::new(), String::new()),
    })
}

/// Renders the cases. A sweep always yields a JSON array, with failed cases
/// as error objects in place.
pub fn render(
    items: &[Result<Payload, CliError>],
    sweep: bool,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let value = if sweep {
                Value::Array(
                    items
                        .iter()
                        .map(|i| match i {
                            Ok(p) => p.json.clone(),
                            Err(e) => e.to_json(),
                        })
                        .collect(),
                )
            } else {
                match &items[0] {
                    Ok(p) => p.json.clone(),
                    Err(_) => return Ok(String::new()),
                }
            };
            Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
        }
        Format::Csv => {
            let mut out = String::new();
            if let Some(Ok(first)) = items.iter().find(|i| i.is_ok()) {
                out.push_str(&first.csv_header);
            }
            for p in items.iter().flatten() {
                out.push_str(&p.csv_body);
            }
            Ok(out)
        }
    }
}

pub fn write_output(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::io(format!("writing {}", p.display()), e))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("writing stdout", e))
        }
    }
}

/// Appends one line per case: `{"command", "argv", "result"}` or
/// `{"command", "argv", "error"}`.
pub fn append_log(
    path: &Path,
    command: &str,
    argv: &[String],
    items: &[Result<Payload, CliError>],
) -> Result<(), CliError> {
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| CliError::io(format!("opening {}", path.display()), e))?;
    let mut text = String::new();
    for item in items {
        let line = match item {
            Ok(p) => json!({ "command": command, "argv": argv, "result": p.json }),
            Err(e) => json!({ "command": command, "argv": argv, "error": e.to_json()["error"] }),
        };
        text.push_str(&serde_json::to_string(&line)?);
        text.push('\n');
    }
    file.write_all(text.as_bytes())
        .map_err(|e| CliError::io(format!("appending to {}", path.display()), e))
}
