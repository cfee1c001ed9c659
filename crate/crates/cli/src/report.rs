//! Deterministic report emission: pretty JSON with a fixed field order
//! (`inputs`, `results`, `warnings`) or CSV rows with full-precision
//! floats. Identical inputs produce byte-identical output.

use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct Report<I: Serialize, R: Serialize> {
    pub inputs: I,
    pub results: R,
    pub warnings: Vec<String>,
}

pub fn render_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Domain(format!("report serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Joins pre-formatted cells into CSV lines. Floats are formatted with
/// `{}`, which round-trips f64 exactly.
pub fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn float_cell(v: f64) -> String {
    format!("{v}")
}

pub fn optional_float_cell(v: Option<f64>) -> String {
    v.map(float_cell).unwrap_or_default()
}

/// Writes the rendered report to `--out` or standard output.
pub fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
