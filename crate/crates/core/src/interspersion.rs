//! Signature sequences of `S_theta` and the interspersion arrays read off
//! from them.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda::{generate_s, SElement};
use crate::theta::ThetaSpec;
use crate::word::{first_occurrence_coding, LetterWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Signature {
    /// The `i` coordinates, the signature of `theta`.
    IOfTheta,
    /// The `j` coordinates, the signature of `1/theta`.
    JOfThetaInverse,
}

fn coordinate(which: Signature, e: SElement) -> u64 {
    match which {
        Signature::IOfTheta => e.i,
        Signature::JOfThetaInverse => e.j,
    }
}

pub fn signature_sequence(theta: &ThetaSpec, n: usize, which: Signature) -> Result<Vec<u64>> {
    Ok(generate_s(theta, n)?.into_iter().map(|e| coordinate(which, e)).collect())
}

/// A finite, possibly ragged portion of an interspersion array.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InterspersionArray {
    pub rows: Vec<Vec<u64>>,
}

/// First failed axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    /// A value appears twice.
    Duplicate { value: u64 },
    RowNotIncreasing { row: usize, col: usize },
    ColumnNotIncreasing { row: usize, col: usize },
    /// `u_p < v_q < u_{p+1}` without `u_{p+1} < v_{q+1} < u_{p+2}`.
    Interleaving { u: usize, p: usize, v: usize, q: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Duplicate { value } => write!(f, "value {value} appears twice"),
            AxiomViolation::RowNotIncreasing { row, col } => {
                write!(f, "row {row} decreases at column {col}")
            }
            AxiomViolation::ColumnNotIncreasing { row, col } => {
                write!(f, "column {col} decreases at row {row}")
            }
            AxiomViolation::Interleaving { u, p, v, q } => {
                write!(f, "rows {u} and {v} fail to interleave at columns {p} and {q}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ok: bool,
    pub first_violation: Option<AxiomViolation>,
    /// Largest `m` with `0..=m` all present, if `0` is present.
    pub covered_through: Option<u64>,
}

impl InterspersionArray {
    pub fn new(rows: Vec<Vec<u64>>) -> Self {
        InterspersionArray { rows }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u64> {
        self.rows.get(row)?.get(col).copied()
    }

    /// Transpose of the materialized region.
    pub fn transpose(&self) -> InterspersionArray {
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let rows = (0..width)
            .map(|c| self.rows.iter().map_while(|r| r.get(c).copied()).collect())
            .collect();
        InterspersionArray { rows }
    }

    /// Row-major CSV, one line per row.
    pub fn to_csv(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect()
    }

    /// Parse [`Self::to_csv`] output; `#` lines and blank lines are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split(',')
                .map(|v| v.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::MalformedBFile { line: n + 1, reason: e.to_string() })?;
            rows.push(row);
        }
        Ok(InterspersionArray { rows })
    }

    /// Check the four interspersion axioms on the materialized entries.
    ///
    /// A truncated row is never a violation; the interleaving axiom is only
    /// tested when all six entries it mentions are present.
    pub fn verify_axioms(&self) -> AxiomReport {
        let violation = self.first_violation();
        let seen: BTreeSet<u64> = self.rows.iter().flatten().copied().collect();
        let covered_through = seen
            .iter()
            .enumerate()
            .take_while(|&(n, &v)| n as u64 == v)
            .last()
            .map(|(_, &v)| v);
        AxiomReport {
            ok: violation.is_none(),
            first_violation: violation,
            covered_through,
        }
    }

    fn first_violation(&self) -> Option<AxiomViolation> {
        let mut seen = HashSet::new();
        for &value in self.rows.iter().flatten() {
            if !seen.insert(value) {
                return Some(AxiomViolation::Duplicate { value });
            }
        }
        for (row, r) in self.rows.iter().enumerate() {
            if let Some(col) = (1..r.len()).find(|&c| r[c] <= r[c - 1]) {
                return Some(AxiomViolation::RowNotIncreasing { row, col });
            }
        }
        for row in 1..self.rows.len() {
            let (above, here) = (&self.rows[row - 1], &self.rows[row]);
            if let Some(col) = (0..here.len().min(above.len())).find(|&c| here[c] <= above[c]) {
                return Some(AxiomViolation::ColumnNotIncreasing { row, col });
            }
        }
        for (u, ur) in self.rows.iter().enumerate() {
            for (v, vr) in self.rows.iter().enumerate() {
                if u == v {
                    continue;
                }
                for p in 0..ur.len().saturating_sub(2) {
                    for q in 0..vr.len().saturating_sub(1) {
                        let hyp = ur[p] < vr[q] && vr[q] < ur[p + 1];
                        if hyp && !(ur[p + 1] < vr[q + 1] && vr[q + 1] < ur[p + 2]) {
                            return Some(AxiomViolation::Interleaving { u, p, v, q });
                        }
                    }
                }
            }
        }
        None
    }
}

/// Entry `(r, c)` is the index of the `(c+1)`-th occurrence of `r` in
/// `signature`.
pub fn array_from_signature(signature: &[u64], rows: usize) -> Result<InterspersionArray> {
    let mut out = vec![Vec::new(); rows];
    for (n, &value) in signature.iter().enumerate() {
        if let Some(row) = out.get_mut(value as usize) {
            row.push(n as u64);
        }
    }
    if let Some(row) = out.iter().position(Vec::is_empty) {
        return Err(Error::InsufficientBudget { row, budget: signature.len() });
    }
    Ok(InterspersionArray { rows: out })
}

/// The array of the `j`-signature over the first `budget` elements of
/// `S_theta`.
pub fn interspersion_array(theta: &ThetaSpec, rows: usize, budget: usize) -> Result<InterspersionArray> {
    let signature = signature_sequence(theta, budget, Signature::JOfThetaInverse)?;
    array_from_signature(&signature, rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorPath {
    /// `(i_{m+1} - i_m, j_{m+1} - j_m)`.
    pub vectors: Vec<(i64, i64)>,
    pub word: LetterWord,
}

/// Steps between consecutive elements of the first `n` elements of
/// `S_theta`, coded by first occurrence.
pub fn vector_path(theta: &ThetaSpec, n: usize) -> Result<VectorPath> {
    let s = generate_s(theta, n)?;
    let vectors: Vec<(i64, i64)> = s
        .windows(2)
        .map(|w| (w[1].i as i64 - w[0].i as i64, w[1].j as i64 - w[0].j as i64))
        .collect();
    let word = first_occurrence_coding(vectors.iter().copied());
    Ok(VectorPath { vectors, word })
}
