//! Reading and writing plain-text data files.
//!
//! Format: one observation per line in decimal or scientific notation.
//! Blank lines and lines starting with `#` are ignored. Every value must
//! lie strictly inside (0, 1).

use crate::error::CliError;
use std::fs;
use std::io::Write;
use std::path::Path;

/// Reads a sample from `path`, reporting the offending line on error.
pub fn read_data_file(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| CliError::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message: format!("expected a number, found {line:?}"),
        })?;
        if !(value > 0.0 && value < 1.0) {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                message: format!("value {value} is outside the open interval (0, 1)"),
            });
        }
        values.push(value);
    }
    Ok(values)
}

/// Writes one value per line with full round-trip precision.
pub fn write_data_file(path: &Path, values: &[f64]) -> Result<(), CliError> {
    let mut out = String::with_capacity(values.len() * 20);
    for v in values {
        out.push_str(&format!("{v}\n"));
    }
    fs::write(path, out).map_err(CliError::io(path))
}

/// Writes values to an arbitrary sink (used for stdout).
pub fn write_data_stream<W: Write>(mut sink: W, values: &[f64]) -> std::io::Result<()> {
    for v in values {
        writeln!(sink, "{v}")?;
    }
    Ok(())
}
