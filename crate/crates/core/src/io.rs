//! Plain-text sample files: one real per line, `#` starts a comment, blank
//! lines are skipped. Numbers use `.` as the decimal point regardless of
//! locale.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Parses a sample file body. Lines are numbered from 1 in errors.
pub fn parse_sample(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = match line.find('#') {
            Some(at) => &line[..at],
            None => line,
        }
        .trim();
        if body.is_empty() {
            continue;
        }
        let v: f64 = body.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("`{body}` is not a number"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("`{body}` is not finite"),
            });
        }
        out.push(v);
    }
    Ok(out)
}

pub fn read_sample(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_sample(&text)
}

/// Writes values in shortest round-trip form, so parsing restores them bit
/// for bit.
pub fn format_sample(values: &[f64], header: &str) -> String {
    let mut s = String::new();
    for line in header.lines() {
        let _ = writeln!(s, "# {line}");
    }
    for v in values {
        let _ = writeln!(s, "{v:?}");
    }
    s
}
