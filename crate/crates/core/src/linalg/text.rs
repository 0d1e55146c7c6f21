//! Plain-text matrix format.
//!
//! ```text
//! 2 3
//! 1 0 1
//! 0 1 -1
//! # labels: a b c
//! ```
//!
//! The header gives the dimensions, then one line per row. Lines starting with
//! `#` may follow the rows and are kept verbatim.

use std::fmt;
use std::str::FromStr;

use super::IntMatrix;
use crate::error::{Error, Result};

/// A matrix together with its trailing comment lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixText {
    pub matrix: IntMatrix,
    /// Comment lines without the leading `#` and one optional space.
    pub comments: Vec<String>,
}

const LABEL_PREFIX: &str = "labels:";

impl MatrixText {
    pub fn new(matrix: IntMatrix) -> Self {
        MatrixText { matrix, comments: Vec::new() }
    }

    pub fn with_labels(matrix: IntMatrix, labels: &[String]) -> Self {
        let line = format!("{} {}", LABEL_PREFIX, labels.join(" "));
        MatrixText { matrix, comments: vec![line] }
    }

    /// Column labels from a `# labels:` comment, if present.
    pub fn labels(&self) -> Option<Vec<String>> {
        self.comments.iter().find_map(|c| {
            c.strip_prefix(LABEL_PREFIX).map(|rest| rest.split_whitespace().map(str::to_string).collect())
        })
    }
}

fn parse_ints(line: &str, expected: usize, what: &str) -> Result<Vec<i64>> {
    let vals = line
        .split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{what}: {t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if vals.len() != expected {
        return Err(Error::Parse(format!("{what}: expected {expected} values, found {}", vals.len())));
    }
    Ok(vals)
}

impl FromStr for MatrixText {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let dims = parse_ints(header, 2, "header")?;
        if dims.iter().any(|&d| d < 0) {
            return Err(Error::Parse("negative dimension".into()));
        }
        let (rows, cols) = (dims[0] as usize, dims[1] as usize);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {i}")))?;
            data.extend(parse_ints(line, cols, &format!("row {i}"))?);
        }
        let mut comments = Vec::new();
        for line in lines {
            if let Some(c) = line.strip_prefix('#') {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            } else if !line.trim().is_empty() {
                return Err(Error::Parse(format!("unexpected trailing line {line:?}")));
            }
        }
        Ok(MatrixText { matrix: IntMatrix::from_vec(rows, cols, data)?, comments })
    }
}

impl fmt::Display for MatrixText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        writeln!(f, "{} {}", m.nrows(), m.ncols())?;
        for i in 0..m.nrows() {
            let row: Vec<String> = m.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        Ok(())
    }
}
