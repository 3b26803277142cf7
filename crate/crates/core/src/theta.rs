//! Exact representation of an irrational `theta` in `(1, 2)`.
//!
//! `theta` is only ever known through its simple continued fraction
//! `[1; t1, t2, ...]`. Every ordering question reduces to the sign of a
//! linear form `c0 + c1*theta`, which is settled by walking the continued
//! fraction of the rational `-c0/c1` against the partial quotients of
//! `theta`. No floating point is involved anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default bit budget for big-integer work in log-ratio streams.
pub const DEFAULT_BIT_BUDGET: u64 = 1_000_000;


/// The value `c0 + c1*theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LinearForm {
    pub c0: i64,
    pub c1: i64,
}

impl LinearForm {
    pub const ZERO: LinearForm = LinearForm { c0: 0, c1: 0 };

    pub const fn new(c0: i64, c1: i64) -> Self {
        LinearForm { c0, c1 }
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(LinearForm::new(
            self.c0.checked_add(rhs.c0)?,
            self.c1.checked_add(rhs.c1)?,
        ))
    }

    pub fn checked_sub(self, rhs: Self) -> Option<Self> {
        Some(LinearForm::new(
            self.c0.checked_sub(rhs.c0)?,
            self.c1.checked_sub(rhs.c1)?,
        ))
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm::new(-self.c0, -self.c1)
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, rhs: LinearForm) -> LinearForm {
        LinearForm::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, rhs: LinearForm) -> LinearForm {
        LinearForm::new(self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}θ", self.c0, self.c1)
    }
}

/// Which floor to take in [`ThetaSpec::floor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FloorMode {
    /// `floor(k * theta)`
    TimesTheta,
    /// `floor(k / theta)`
    OverTheta,
}

/// An irrational `theta` in `(1, 2)` given by its partial quotients.
///
/// Cloning is cheap; clones share the memoized partial-quotient stream.
#[derive(Clone)]
pub struct ThetaSpec {
    source: Arc<Source>,
    label: String,
}

enum Source {
    Periodic { preperiod: Vec<u64>, period: Vec<u64> },
    Explicit(Vec<u64>),
    LogRatio(LogRatio),
}

impl fmt::Debug for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThetaSpec").field("label", &self.label).finish()
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl ThetaSpec {
    /// `phi = [1; 1, 1, ...]`.
    pub fn golden() -> Self {
        Self::periodic_labeled(vec![], vec![1], "phi".into()).expect("valid builtin")
    }

    /// `log2(3)`, streamed by exact power comparison.
    pub fn log2_3() -> Self {
        Self::log_ratio(2, 3).expect("valid builtin")
    }

    /// `pi - 2`, backed by the bundled partial-quotient fixture.
    pub fn pi_minus_2() -> Self {
        let terms = parse_pq_list(crate::fixtures::PI_MINUS_2_PARTIAL_QUOTIENTS).expect("bundled fixture parses");
        Self::explicit_labeled(terms, "pi-2".into()).expect("valid builtin")
    }

    /// The purely periodic or eventually periodic continued fraction
    /// `preperiod ++ period ++ period ++ ...`; the first term must be 1.
    pub fn periodic(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        let label = format!("periodic:{}/{}", join(&preperiod), join(&period));
        Self::periodic_labeled(preperiod, period, label)
    }

    fn periodic_labeled(preperiod: Vec<u64>, period: Vec<u64>, label: String) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidTheta("period must be non-empty".into()));
        }
        let first = preperiod.first().or(period.first()).copied();
        check_terms(first, preperiod.iter().chain(&period))?;
        Ok(ThetaSpec {
            source: Arc::new(Source::Periodic { preperiod, period }),
            label,
        })
    }

    /// A finite list of partial quotients `[1, t1, ..., tm]`. Asking for
    /// terms past the end yields [`Error::PrecisionExhausted`].
    pub fn explicit(terms: Vec<u64>) -> Result<Self> {
        let label = format!("cf:{}", join(&terms));
        Self::explicit_labeled(terms, label)
    }

    fn explicit_labeled(terms: Vec<u64>, label: String) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidTheta("empty partial-quotient list".into()));
        }
        check_terms(terms.first().copied(), terms.iter())?;
        Ok(ThetaSpec {
            source: Arc::new(Source::Explicit(terms)),
            label,
        })
    }

    /// Load an explicit list from a file with one integer per line.
    pub fn from_pq_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let terms = parse_pq_list(&text)?;
        Self::explicit_labeled(terms, format!("cf-file:{}", path.display()))
    }

    /// `log_base(argument)` with the default bit budget.
    pub fn log_ratio(base: u64, argument: u64) -> Result<Self> {
        Self::log_ratio_with_budget(base, argument, DEFAULT_BIT_BUDGET)
    }

    pub fn log_ratio_with_budget(base: u64, argument: u64, budget_bits: u64) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidTheta("log base must be at least 2".into()));
        }
        if argument <= base {
            return Err(Error::InvalidTheta("log argument must exceed the base".into()));
        }
        if (base as u128) * (base as u128) <= argument as u128 {
            return Err(Error::InvalidTheta(format!(
                "log_{base}({argument}) is not below 2"
            )));
        }
        if log_is_rational(base, argument) {
            return Err(Error::InvalidTheta(format!(
                "log_{base}({argument}) is rational"
            )));
        }
        let state = LogRatioState {
            terms: Vec::new(),
            u: (BigUint::from(base), BigUint::one()),
            v: (BigUint::from(argument), BigUint::one()),
            failure: None,
        };
        Ok(ThetaSpec {
            source: Arc::new(Source::LogRatio(LogRatio {
                budget_bits,
                state: Mutex::new(state),
            })),
            label: format!("log:{base},{argument}"),
        })
    }

    /// Parse a theta spec string: `phi`, `pi-2`, `log:2,3`,
    /// `cf:1,7,15,1,292`, `periodic:1/1` or `cf-file:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "phi" => return Ok(Self::golden()),
            "pi-2" => return Ok(Self::pi_minus_2()),
            _ => {}
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidTheta(format!("unrecognized theta spec `{s}`")))?;
        match kind {
            "log" => {
                let nums = parse_csv(rest)?;
                match nums[..] {
                    [base, arg] => Self::log_ratio(base, arg),
                    _ => Err(Error::InvalidTheta("log: expects `base,argument`".into())),
                }
            }
            "cf" => Self::explicit(parse_csv(rest)?),
            "periodic" => {
                let (pre, per) = rest.split_once('/').ok_or_else(|| {
                    Error::InvalidTheta("periodic: expects `preperiod/period`".into())
                })?;
                let pre = if pre.trim().is_empty() {
                    Vec::new()
                } else {
                    parse_csv(pre)?
                };
                Self::periodic(pre, parse_csv(per)?)
            }
            "cf-file" => Self::from_pq_file(rest),
            _ => Err(Error::InvalidTheta(format!("unknown theta kind `{kind}`"))),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Partial quotient `t_k`.
    pub fn partial_quotient(&self, k: usize) -> Result<u64> {
        match &*self.source {
            Source::Periodic { preperiod, period } => Ok(if k < preperiod.len() {
                preperiod[k]
            } else {
                period[(k - preperiod.len()) % period.len()]
            }),
            Source::Explicit(terms) => terms.get(k).copied().ok_or(Error::PrecisionExhausted {
                needed: k,
                available: terms.len(),
            }),
            Source::LogRatio(stream) => stream.term(k),
        }
    }

    /// `t_0, ..., t_{n-1}`.
    pub fn partial_quotients(&self, n: usize) -> Result<Vec<u64>> {
        (0..n).map(|k| self.partial_quotient(k)).collect()
    }

    /// Exact sign of `c0 + c1*theta` relative to zero.
    pub fn sign_of_form(&self, f: LinearForm) -> Result<Ordering> {
        if f.c1 == 0 {
            return Ok(f.c0.cmp(&0));
        }
        // c0 + c1*theta > 0  <=>  theta > -c0/c1 when c1 > 0, reversed otherwise.
        let (num, den) = if f.c1 > 0 {
            (-(f.c0 as i128), f.c1 as i128)
        } else {
            (f.c0 as i128, -(f.c1 as i128))
        };
        let ord = self.cmp_with_rational(num, den)?;
        Ok(if f.c1 > 0 { ord } else { ord.reverse() })
    }

    /// Exact comparison of `a` and `b` as real numbers.
    pub fn compare(&self, a: LinearForm, b: LinearForm) -> Result<Ordering> {
        let d = a.checked_sub(b).ok_or(Error::Overflow("linear form difference"))?;
        self.sign_of_form(d)
    }

    /// Compare `theta` with `num/den` (`den > 0`) by walking both continued
    /// fractions in lockstep. At an even depth the larger tail is the larger
    /// number; at an odd depth the order flips.
    fn cmp_with_rational(&self, mut num: i128, mut den: i128) -> Result<Ordering> {
        debug_assert!(den > 0);
        let mut depth = 0usize;
        loop {
            let (q, r) = num.div_mod_floor(&den);
            let t = self.partial_quotient(depth)? as i128;
            let at_depth = if t != q {
                Some(t.cmp(&q))
            } else if r == 0 {
                // The rational's expansion stops here while theta's tail exceeds t.
                Some(Ordering::Greater)
            } else {
                None
            };
            if let Some(ord) = at_depth {
                return Ok(if depth.is_multiple_of(2) { ord } else { ord.reverse() });
            }
            num = den;
            den = r;
            depth += 1;
        }
    }

    /// `floor(k*theta)` or `floor(k/theta)` for `k >= 1`, by bisection on
    /// exact signs.
    pub fn floor(&self, k: u64, mode: FloorMode) -> Result<u64> {
        if k == 0 {
            return Ok(0);
        }
        let k = i64::try_from(k).map_err(|_| Error::Overflow("floor argument"))?;
        // `below(m)` is true while m lies strictly below the target value.
        let below = |m: i64| -> Result<bool> {
            let f = match mode {
                FloorMode::TimesTheta => LinearForm::new(-m, k),
                FloorMode::OverTheta => LinearForm::new(k, -m),
            };
            Ok(self.sign_of_form(f)? == Ordering::Greater)
        };
        // Invariant: below(lo) holds and below(hi) fails.
        let (mut lo, mut hi) = match mode {
            FloorMode::TimesTheta => (k, 2 * k),
            FloorMode::OverTheta => (0, k),
        };
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if below(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo as u64)
    }
}

impl FromStr for ThetaSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ThetaSpec::parse(s)
    }
}

/// Parse a partial-quotient list: one integer per line, `#` comments.
pub fn parse_pq_list(text: &str) -> Result<Vec<u64>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.parse::<u64>()
                .map_err(|_| Error::InvalidTheta(format!("bad partial quotient `{l}`")))
        })
        .collect()
}

fn parse_csv(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidTheta(format!("bad integer `{}`", x.trim())))
        })
        .collect()
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn check_terms<'a>(first: Option<u64>, all: impl Iterator<Item = &'a u64>) -> Result<()> {
    if first != Some(1) {
        return Err(Error::InvalidTheta(
            "leading partial quotient must be 1 (theta in (1,2))".into(),
        ));
    }
    let mut all = all;
    if all.any(|&t| t == 0) {
        return Err(Error::InvalidTheta("partial quotients must be positive".into()));
    }
    Ok(())
}

/// `log_b(a)` is rational iff `a` and `b` are powers of a common integer,
/// i.e. iff `a` is a power of the primitive root of `b`.
fn log_is_rational(base: u64, argument: u64) -> bool {
    let mut root = base as u128;
    for m in (2..=64u32).rev() {
        let r = integer_root(base as u128, m);
        if r >= 2 && r.checked_pow(m) == Some(base as u128) {
            root = r;
            break;
        }
    }
    let mut p = root;
    while p < argument as u128 {
        p *= root;
    }
    p == argument as u128
}

fn integer_root(x: u128, m: u32) -> u128 {
    let mut r = (x as f64).powf(1.0 / m as f64).round() as u128;
    while r > 0 && r.checked_pow(m).is_none_or(|p| p > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(m).is_some_and(|p| p <= x) {
        r += 1;
    }
    r
}

struct LogRatio {
    budget_bits: u64,
    state: Mutex<LogRatioState>,
}

/// Continued fraction of `log_u(v)` for rationals `u, v > 1`: with `t` the
/// largest integer such that `u^t <= v`, the next state is
/// `log_{v/u^t}(u)`.
struct LogRatioState {
    terms: Vec<u64>,
    u: (BigUint, BigUint),
    v: (BigUint, BigUint),
    failure: Option<Error>,
}

impl LogRatio {
    fn term(&self, k: usize) -> Result<u64> {
        let mut st = self.state.lock().unwrap_or_else(|e| e.into_inner());
        while st.terms.len() <= k {
            if let Some(err) = &st.failure {
                return Err(err.clone());
            }
            if let Err(err) = st.step(self.budget_bits) {
                st.failure = Some(err.clone());
                return Err(err);
            }
        }
        Ok(st.terms[k])
    }
}

impl LogRatioState {
    fn step(&mut self, budget: u64) -> Result<()> {
        let (un, ud) = &self.u;
        let (vn, vd) = &self.v;
        let over = |x: &BigUint| x.bits() > budget;
        let (mut pn, mut pd) = (BigUint::one(), BigUint::one());
        let mut t = 0u64;
        loop {
            let cn = &pn * un;
            let cd = &pd * ud;
            if over(&cn) || over(&cd) {
                return Err(Error::BudgetExceeded { budget_bits: budget });
            }
            let lhs = &cn * vd;
            let rhs = vn * &cd;
            match lhs.cmp(&rhs) {
                Ordering::Less => {
                    pn = cn;
                    pd = cd;
                    t += 1;
                }
                Ordering::Equal => {
                    return Err(Error::InvalidTheta("log ratio is rational".into()))
                }
                Ordering::Greater => break,
            }
        }
        // u' = v / u^t, v' = u
        let mut nn = vn * &pd;
        let mut nd = vd * &pn;
        let g = nn.gcd(&nd);
        nn /= &g;
        nd /= &g;
        if over(&nn) || over(&nd) {
            return Err(Error::BudgetExceeded { budget_bits: budget });
        }
        let old_u = std::mem::replace(&mut self.u, (nn, nd));
        self.v = old_u;
        self.terms.push(t);
        Ok(())
    }
}
