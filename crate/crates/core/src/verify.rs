//! The structural checks run by `lambdaw verify`.
//!
//! Each check is a pure function of `(theta, n)` and the shared Lambda
//! prefix. Checks run on scoped threads; the report keeps a fixed order.

use std::collections::BTreeSet;
use std::fmt;
use std::thread;

use serde::Serialize;

use crate::cf::{is_best_approx_second_kind, ApproxSide, Ladder, Side};
use crate::complement::{beatty_sequences, ComplementStructure};
use crate::eertree::{is_rich, palindrome_alphabet_bound, ups_of_all_prefixes};
use crate::error::Result;
use crate::fixtures;
use crate::gamma::{compare_palindromes, project};
use crate::interspersion::{array_from_signature, signature_sequence, Signature};
use crate::lambda::{
    lambda_word, letter_count_in, max_run_in, occurrence_rectangle_in, predicted_two_letter_factors,
    LambdaPrefix,
};
use crate::theta::ThetaSpec;
use crate::word::Letter;

/// Integers checked for the Beatty partition.
pub const BEATTY_LIMIT: u64 = 1000;
/// Largest `K` for which nuclear and maximal windows are built.
pub const WINDOW_LIMIT: u64 = 50;
/// Longest factor compared by the palindrome-preservation check.
pub const FACTOR_LIMIT: usize = 30;
/// Elements of `S_theta` used for the interspersion array.
pub const INTERSPERSION_BUDGET: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub theta: String,
    pub n: usize,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theta = {}, n = {}", self.theta, self.n)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{:width$}  {mark}  {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

struct Context<'a> {
    theta: &'a ThetaSpec,
    prefix: LambdaPrefix,
    ladder: Ladder,
}

impl Context<'_> {
    fn alphabet(&self) -> usize {
        self.prefix.codebook.len()
    }

    /// Letters all of whose occurrences lie inside the prefix.
    fn complete_letters(&self) -> Result<Vec<Letter>> {
        let index = self.prefix.index_map();
        let n = self.prefix.len();
        let mut out = Vec::new();
        for x in 0..self.alphabet() {
            if letter_count_in(&self.ladder, x)? > n as u64 {
                continue;
            }
            let rect = occurrence_rectangle_in(&self.ladder, x)?;
            if rect.elements().all(|e| index.get(&e).is_some_and(|&m| m < n)) {
                out.push(x);
            }
        }
        Ok(out)
    }
}

type Outcome = Result<(bool, String)>;
type Check = fn(&Context) -> Outcome;

const CHECKS: &[(&str, Check)] = &[
    ("gap-codebook", gap_codebook),
    ("best-approximation", best_approximation),
    ("letter-counts", letter_counts),
    ("max-runs", max_runs),
    ("two-letter-factors", two_letter_factors),
    ("richness", richness),
    ("palindrome-alphabet", palindrome_alphabet),
    ("beatty-partition", beatty_partition),
    ("complement-windows", complement_windows),
    ("ups-window", ups_window_agreement),
    ("gamma-preservation", gamma_preservation),
    ("interspersion-axioms", interspersion_axioms),
    ("reference-prefix", reference_prefix),
];

/// Run every check on the first `n` letters of `Lambda_theta`.
///
/// A check that cannot be decided (for example because the partial
/// quotients run out) aborts the suite with that error.
pub fn run_suite(theta: &ThetaSpec, n: usize) -> Result<Report> {
    let prefix = lambda_word(theta, n)?;
    let ladder = Ladder::build(theta, prefix.codebook.len())?;
    let ctx = Context { theta, prefix, ladder };
    let outcomes: Vec<Outcome> = thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .map(|&(_, check)| {
                let ctx = &ctx;
                s.spawn(move || check(ctx))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    });
    let mut checks = Vec::with_capacity(CHECKS.len());
    for (&(name, _), outcome) in CHECKS.iter().zip(outcomes) {
        let (passed, detail) = outcome?;
        checks.push(CheckResult { name, passed, detail });
    }
    Ok(Report {
        theta: theta.label().to_string(),
        n,
        checks,
    })
}

fn gap_codebook(ctx: &Context) -> Outcome {
    // lambda_word already cross-checks every new gap against the ladder.
    let ok = ctx.prefix.word.is_first_occurrence_coded()
        && ctx
            .prefix
            .codebook
            .iter()
            .zip(ctx.ladder.entries())
            .all(|(d, c)| (d.a, d.b, d.side) == (c.a, c.b, c.side));
    Ok((ok, format!("{} distinct gaps", ctx.alphabet())))
}

fn best_approximation(ctx: &Context) -> Outcome {
    for c in &ctx.ladder.entries()[..ctx.alphabet()] {
        let side = match c.side {
            Side::Left => ApproxSide::Left,
            Side::Right => ApproxSide::Right,
        };
        if !is_best_approx_second_kind(ctx.theta, c.a, c.b, side)? {
            return Ok((false, format!("{c} is not a one-sided best approximation")));
        }
    }
    Ok((true, format!("{} gap fractions", ctx.alphabet())))
}

fn letter_counts(ctx: &Context) -> Outcome {
    let complete = ctx.complete_letters()?;
    for &x in &complete {
        let expected = letter_count_in(&ctx.ladder, x)?;
        let seen = ctx.prefix.word.count(x) as u64;
        if seen != expected {
            return Ok((false, format!("letter {x}: {seen} occurrences, expected {expected}")));
        }
    }
    Ok((true, format!("complete letters {complete:?}")))
}

fn max_runs(ctx: &Context) -> Outcome {
    let complete: BTreeSet<Letter> = ctx.complete_letters()?.into_iter().collect();
    for x in 0..ctx.alphabet() {
        let predicted = max_run_in(&ctx.ladder, x)?;
        let seen = ctx.prefix.word.longest_run(x) as u64;
        let ok = if complete.contains(&x) { seen == predicted } else { seen <= predicted };
        if !ok {
            return Ok((false, format!("letter {x}: run {seen}, predicted {predicted}")));
        }
    }
    Ok((true, format!("exact for {} complete letters", complete.len())))
}

fn two_letter_factors(ctx: &Context) -> Outcome {
    let predicted = predicted_two_letter_factors(ctx.theta, ctx.alphabet())?;
    let observed: BTreeSet<(Letter, Letter)> =
        ctx.prefix.word.windows(2).map(|w| (w[0], w[1])).collect();
    if let Some(extra) = observed.difference(&predicted).next() {
        return Ok((false, format!("unpredicted factor {extra:?}")));
    }
    let complete = ctx.complete_letters()?;
    for &u in &complete {
        for &v in &complete {
            if predicted.contains(&(u, v)) != observed.contains(&(u, v)) {
                return Ok((false, format!("factor ({u}, {v}) predicted but not seen")));
            }
        }
    }
    Ok((true, format!("{} observed, {} predicted", observed.len(), predicted.len())))
}

fn richness(ctx: &Context) -> Outcome {
    let r = is_rich(&ctx.prefix.word);
    Ok(match r.first_violation {
        None => (true, "every prefix has a ups".into()),
        Some(p) => (false, format!("no ups at position {p}")),
    })
}

fn palindrome_alphabet(ctx: &Context) -> Outcome {
    let m = palindrome_alphabet_bound(&ctx.prefix.word);
    Ok((m <= 3, format!("largest palindrome alphabet {m}")))
}

fn beatty_partition(ctx: &Context) -> Outcome {
    let (minus, plus) = beatty_sequences(ctx.theta, BEATTY_LIMIT as usize)?;
    let mut all: Vec<u64> = minus.into_iter().chain(plus).filter(|&k| k <= BEATTY_LIMIT).collect();
    all.sort_unstable();
    let ok = all.iter().copied().eq(1..=BEATTY_LIMIT);
    Ok((ok, format!("1..={BEATTY_LIMIT}")))
}

fn complement_windows(ctx: &Context) -> Outcome {
    // Each window construction asserts complement closure and palindromic gaps.
    let mut cs = ComplementStructure::new(ctx.theta);
    for big_k in 1..=WINDOW_LIMIT {
        let c = cs.maximal(big_k)?;
        if c.head.len() != c.tail.len() {
            return Ok((false, format!("K = {big_k}: head and tail differ in length")));
        }
    }
    Ok((true, format!("N_K and C_K for K <= {WINDOW_LIMIT}")))
}

fn ups_window_agreement(ctx: &Context) -> Outcome {
    let reports = ups_of_all_prefixes(&ctx.prefix.word);
    let mut cs = ComplementStructure::new(ctx.theta);
    for (k, report) in reports.iter().enumerate() {
        let w = cs.ups_window(k + 1)?;
        if Some(&w.delta) != report.ups.as_ref() {
            return Ok((false, format!("prefix {}: window {} vs ups {:?}", k + 1, w.delta, report.ups)));
        }
    }
    Ok((true, format!("n = 1..={}", reports.len())))
}

fn gamma_preservation(ctx: &Context) -> Outcome {
    let gamma = project(ctx.theta, &ctx.prefix.word)?;
    let limit = FACTOR_LIMIT.min(ctx.prefix.len());
    let r = compare_palindromes(&ctx.prefix.word, &gamma, limit);
    Ok(match r.counterexample {
        None => (true, format!("{} factors up to length {limit}", r.windows_checked)),
        Some((start, len)) => (false, format!("factor at {start} of length {len}")),
    })
}

fn interspersion_axioms(ctx: &Context) -> Outcome {
    let sig = signature_sequence(ctx.theta, INTERSPERSION_BUDGET, Signature::JOfThetaInverse)?;
    let rows = sig.iter().max().map_or(0, |&m| m as usize + 1);
    let report = array_from_signature(&sig, rows)?.verify_axioms();
    Ok(match report.first_violation {
        None => (true, format!("{rows} rows from {INTERSPERSION_BUDGET} elements")),
        Some(v) => (false, v.to_string()),
    })
}

fn reference_prefix(ctx: &Context) -> Outcome {
    let Some(reference) = fixtures::lambda_reference(ctx.theta) else {
        return Ok((true, "no bundled reference".into()));
    };
    let generated: Vec<i64> = ctx.prefix.word.iter().map(|&x| x as i64).collect();
    if let Some(m) = reference.first_mismatch(&generated) {
        return Ok((false, format!("index {}: expected {}, got {}", m.index, m.expected, m.actual)));
    }
    let mut compared = generated.len().min(reference.values.len());
    if let Some(gamma_ref) = fixtures::gamma_reference(ctx.theta) {
        let gamma: Vec<i64> = project(ctx.theta, &ctx.prefix.word)?.iter().map(|&x| x as i64).collect();
        if let Some(m) = gamma_ref.first_mismatch(&gamma) {
            return Ok((false, format!("gamma index {}: expected {}, got {}", m.index, m.expected, m.actual)));
        }
        compared += gamma.len().min(gamma_ref.values.len());
    }
    Ok((true, format!("{compared} terms compared")))
}
