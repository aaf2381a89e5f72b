//! CSV reading and writing for series data.
//!
//! Input files carry one numeric column (header optional, `#` comment lines
//! skipped). The first field that parses as a number on the first data row
//! fixes the column; every later row must parse at that column or the read
//! fails with its line number. Silent skipping would bias a test.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::series::Series;

/// Read a series from a CSV file.
pub fn read_series_csv(path: &Path) -> Result<Series> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    parse_series(&text, &path.display().to_string())
}

fn parse_series(text: &str, path: &str) -> Result<Series> {
    let mut column: Option<usize> = None;
    let mut header_allowed = true;
    let mut values = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let col = match column {
            Some(c) => c,
            None => {
                match fields.iter().position(|f| f.parse::<f64>().is_ok()) {
                    Some(c) => {
                        column = Some(c);
                        c
                    }
                    None if header_allowed => {
                        // One non-numeric row at the top is a header.
                        header_allowed = false;
                        continue;
                    }
                    None => {
                        return Err(Error::Parse {
                            path: path.into(),
                            line: line_no,
                            message: format!("no numeric field in row '{line}'"),
                        });
                    }
                }
            }
        };
        header_allowed = false;
        let field = fields.get(col).ok_or_else(|| Error::Parse {
            path: path.into(),
            line: line_no,
            message: format!(
                "row has {} fields, expected column {}",
                fields.len(),
                col + 1
            ),
        })?;
        let value: f64 = field.parse().map_err(|_| Error::Parse {
            path: path.into(),
            line: line_no,
            message: format!("cannot parse '{field}' as a number"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                path: path.into(),
                line: line_no,
                message: format!("non-finite value '{field}'"),
            });
        }
        values.push(value);
    }

    Series::new(values)
}

/// Write a series as a single-column CSV with header `x`; a volatility path
/// adds a second column `v`. Comment lines are emitted first, prefixed `# `.
pub fn write_series_csv(
    path: &Path,
    series: &Series,
    volatility: Option<&[f64]>,
    comments: &[String],
) -> Result<()> {
    if let Some(vol) = volatility {
        if vol.len() != series.len() {
            return Err(Error::LengthMismatch {
                left: series.len(),
                right: vol.len(),
            });
        }
    }
    let mut out = String::new();
    for comment in comments {
        out.push_str("# ");
        out.push_str(comment);
        out.push('\n');
    }
    match volatility {
        None => {
            out.push_str("x\n");
            for v in series.values() {
                out.push_str(&format!("{v}\n"));
            }
        }
        Some(vol) => {
            out.push_str("x,v\n");
            for (x, v) in series.values().iter().zip(vol) {
                out.push_str(&format!("{x},{v}\n"));
            }
        }
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    file.write_all(out.as_bytes())
        .map_err(|e| Error::io(path.display().to_string(), e))
}
