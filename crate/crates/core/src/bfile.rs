//! OEIS b-files: one `index value` pair per line, ascending contiguous
//! indices, `#` comment lines allowed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BFile {
    /// Index of the first value.
    pub offset: i64,
    pub values: Vec<i64>,
}

impl BFile {
    pub fn new(offset: i64, values: Vec<i64>) -> Self {
        BFile { offset, values }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut offset = None;
        let mut values = Vec::new();
        for (n, raw) in text.split('\n').enumerate() {
            let line = n + 1;
            let bad = |reason: &str| Error::MalformedBFile { line, reason: reason.to_string() };
            if raw.ends_with('\r') {
                return Err(bad("CR line ending"));
            }
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad("expected `index value`"));
            };
            let idx: i64 = idx.parse().map_err(|_| bad("index is not an integer"))?;
            let val: i64 = val.parse().map_err(|_| bad("value is not an integer"))?;
            let first = *offset.get_or_insert(idx);
            if idx != first + values.len() as i64 {
                return Err(bad("indices are not contiguous"));
            }
            values.push(val);
        }
        Ok(BFile { offset: offset.unwrap_or(0), values })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// The b-file text, with optional leading comment lines.
    pub fn render(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        for (k, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{} {v}", self.offset + k as i64);
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>, comments: &[&str]) -> Result<()> {
        fs::write(path, self.render(comments))?;
        Ok(())
    }

    /// First index (in this file's numbering) where `generated` differs
    /// from the stored values, over their common length.
    pub fn first_mismatch(&self, generated: &[i64]) -> Option<Mismatch> {
        self.values
            .iter()
            .zip(generated)
            .position(|(a, b)| a != b)
            .map(|k| Mismatch {
                index: self.offset + k as i64,
                expected: self.values[k],
                actual: generated[k],
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: i64,
    pub expected: i64,
    pub actual: i64,
}
