//! Reference data bundled with the crate.

use crate::bfile::BFile;
use crate::error::{Error, Result};
use crate::theta::ThetaSpec;

pub const LAMBDA_LOG2_3: &str = include_str!("../fixtures/A216448.b");
pub const LAMBDA_GOLDEN: &str = include_str!("../fixtures/A216763.b");
pub const LAMBDA_PI_MINUS_2: &str = include_str!("../fixtures/A216764.b");
pub const GAMMA_LOG2_3: &str = include_str!("../fixtures/gamma_log2_3.b");
/// 1-based positions of `3^n` among the sorted numbers `2^i 3^j`.
pub const POWERS_OF_3_POSITIONS: &str = include_str!("../fixtures/A022330.b");
/// 1-based positions of `2^n` among the sorted numbers `2^i 3^j`.
pub const POWERS_OF_2_POSITIONS: &str = include_str!("../fixtures/A022331.b");
pub const INTERSPERSION_LOG2_3: &str = include_str!("../fixtures/interspersion_log2_3.csv");
pub const CONVERGENTS_LOG2_3: &str = include_str!("../fixtures/convergents_log2_3.csv");
pub const GAMMA_TABLE_LOG2_3: &str = include_str!("../fixtures/gamma_table_log2_3.csv");
pub const PI_MINUS_2_PARTIAL_QUOTIENTS: &str = include_str!("../fixtures/pi_minus_2.cf");

fn parse(text: &str) -> BFile {
    BFile::parse(text).expect("bundled b-file parses")
}

/// The bundled Lambda prefix for one of the built-in thetas.
pub fn lambda_reference(theta: &ThetaSpec) -> Option<BFile> {
    let text = match theta.label() {
        "log:2,3" => LAMBDA_LOG2_3,
        "phi" => LAMBDA_GOLDEN,
        "pi-2" => LAMBDA_PI_MINUS_2,
        _ => return None,
    };
    Some(parse(text))
}

pub fn gamma_reference(theta: &ThetaSpec) -> Option<BFile> {
    (theta.label() == "log:2,3").then(|| parse(GAMMA_LOG2_3))
}

/// A row of the convergent table: `A/B`, its ladder continued fraction
/// and its depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentRow {
    pub a: u64,
    pub b: u64,
    pub continued_fraction: Vec<u64>,
    pub depth: usize,
}

/// A row of the projection table: `A/B`, its Lambda letter and gamma value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaRow {
    pub a: u64,
    pub b: u64,
    pub lambda: usize,
    pub gamma: u8,
}

/// Data lines of a small CSV table, skipping comments and the header.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .skip(1)
        .map(|(n, l)| (n + 1, l.split(',').map(str::trim).collect()))
}

fn field<T: std::str::FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| Error::MalformedBFile { line, reason: format!("bad field `{s}`") })
}

pub fn convergent_table() -> Result<Vec<ConvergentRow>> {
    records(CONVERGENTS_LOG2_3)
        .map(|(line, f)| {
            let [a, b, cf, depth] = f[..] else {
                return Err(Error::MalformedBFile { line, reason: "expected 4 fields".into() });
            };
            Ok(ConvergentRow {
                a: field(line, a)?,
                b: field(line, b)?,
                continued_fraction: cf.split_whitespace().map(|t| field(line, t)).collect::<Result<_>>()?,
                depth: field(line, depth)?,
            })
        })
        .collect()
}

pub fn gamma_table() -> Result<Vec<GammaRow>> {
    records(GAMMA_TABLE_LOG2_3)
        .map(|(line, f)| {
            let [a, b, lambda, gamma] = f[..] else {
                return Err(Error::MalformedBFile { line, reason: "expected 4 fields".into() });
            };
            Ok(GammaRow {
                a: field(line, a)?,
                b: field(line, b)?,
                lambda: field(line, lambda)?,
                gamma: field(line, gamma)?,
            })
        })
        .collect()
}
