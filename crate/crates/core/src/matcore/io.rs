use std::fs;
use std::path::Path;

use super::{DenseMatrix, MatError};

/// Formats a float with 17 significant digits, which round-trips any f64.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Parses a headerless CSV matrix: one row per line, comma-separated.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix, MatError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for (c, field) in line.split(',').enumerate() {
            let field = field.trim();
            let x: f64 = field.parse().map_err(|_| MatError::Parse {
                line: lineno + 1,
                message: format!("column {}: cannot parse {field:?} as a number", c + 1),
            })?;
            if !x.is_finite() {
                return Err(MatError::Parse {
                    line: lineno + 1,
                    message: format!("column {}: non-finite value", c + 1),
                });
            }
            row.push(x);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(MatError::Parse {
                    line: lineno + 1,
                    message: format!("expected {} columns, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(MatError::EmptyShape);
    }
    DenseMatrix::from_rows(&rows)
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<DenseMatrix, MatError> {
    let text = fs::read_to_string(path).map_err(|e| MatError::Io(e.to_string()))?;
    parse_matrix_csv(&text)
}

pub fn write_matrix_csv(path: impl AsRef<Path>, m: &DenseMatrix) -> Result<(), MatError> {
    fs::write(path, matrix_to_csv(m)).map_err(|e| MatError::Io(e.to_string()))
}

pub fn matrix_to_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).into_iter().map(format_f64).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
