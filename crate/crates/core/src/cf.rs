//! Convergents of `theta` in order of decreasing `|A - B*theta|`.
//!
//! The ladder is produced by a Stern-Brocot descent toward `theta` from the
//! pair `(1/1, 1/0)`: each step emits the mediant of the current pair and
//! replaces the endpoint on the mediant's side. The step count is the
//! letter (depth) of the emitted fraction. Every emitted fraction is also
//! rebuilt from the partial quotients (`t*c_{k-1} + c_{k-2}`) and the two
//! derivations are required to agree.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::theta::{FloorMode, LinearForm, ThetaSpec};

/// Which side of `theta` a fraction lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// Below `theta`.
    Left,
    /// Above `theta`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ConvergentKind {
    /// `1/0`, the formal convergent `c_{-1}`.
    Formal,
    /// The principal convergent `c_k`.
    Principal(usize),
    /// `(t*a_{k-1} + a_{k-2}) / (t*b_{k-1} + b_{k-2})` with `1 <= t < t_k`.
    Intermediate { k: usize, t: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Convergent {
    pub a: u64,
    pub b: u64,
    pub kind: ConvergentKind,
    pub side: Side,
    /// Stern-Brocot row, which is also the Lambda letter of `|a - b*theta|`.
    pub depth: usize,
}

impl Convergent {
    pub fn fraction(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn is_principal(&self) -> bool {
        !matches!(self.kind, ConvergentKind::Intermediate { .. })
    }

    /// The positive difference `|a - b*theta|` as a linear form.
    pub fn difference(&self) -> LinearForm {
        let (a, b) = (self.a as i64, self.b as i64);
        match self.side {
            Side::Left => LinearForm::new(-a, b),
            Side::Right => LinearForm::new(a, -b),
        }
    }
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

/// A Farey pair `left < theta < right` with `b*c - a*d = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HurwitzPair {
    pub left: Convergent,
    pub right: Convergent,
}

impl HurwitzPair {
    /// `b*c - a*d` for `left = a/b`, `right = c/d`.
    pub fn determinant(&self) -> i128 {
        let (a, b) = (self.left.a as i128, self.left.b as i128);
        let (c, d) = (self.right.a as i128, self.right.b as i128);
        b * c - a * d
    }

    pub fn mediant(&self) -> (u64, u64) {
        (self.left.a + self.right.a, self.left.b + self.right.b)
    }

    pub fn contains(&self, f: (u64, u64), g: (u64, u64)) -> bool {
        let l = self.left.fraction();
        let r = self.right.fraction();
        (l == f && r == g) || (l == g && r == f)
    }
}

impl fmt::Display for HurwitzPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

/// The convergent ladder of a `theta`, grown on demand.
#[derive(Debug, Clone)]
pub struct Ladder {
    theta: ThetaSpec,
    entries: Vec<Convergent>,
    index: HashMap<(u64, u64), usize>,
    left: (u64, u64),
    right: (u64, u64),
    /// `c_{-1}, c_0, c_1, ...` found so far.
    principals: Vec<(u64, u64)>,
    level: usize,
    step: u64,
}

impl Ladder {
    /// The ladder holding `1/0` and `1/1`.
    pub fn new(theta: &ThetaSpec) -> Self {
        let formal = Convergent {
            a: 1,
            b: 0,
            kind: ConvergentKind::Formal,
            side: Side::Right,
            depth: 0,
        };
        let unit = Convergent {
            a: 1,
            b: 1,
            kind: ConvergentKind::Principal(0),
            side: Side::Left,
            depth: 1,
        };
        Ladder {
            theta: theta.clone(),
            entries: vec![formal, unit],
            index: HashMap::from([((1, 0), 0), ((1, 1), 1)]),
            left: (1, 1),
            right: (1, 0),
            principals: vec![(1, 0), (1, 1)],
            level: 1,
            step: 0,
        }
    }

    /// A ladder with at least `n` entries.
    pub fn build(theta: &ThetaSpec, n: usize) -> Result<Self> {
        let mut ladder = Ladder::new(theta);
        ladder.extend_to(n)?;
        Ok(ladder)
    }

    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.entries.len() < n {
            self.push_next()?;
        }
        Ok(())
    }

    fn push_next(&mut self) -> Result<()> {
        let m = (
            self.left.0.checked_add(self.right.0).ok_or(Error::Overflow("mediant"))?,
            self.left.1.checked_add(self.right.1).ok_or(Error::Overflow("mediant"))?,
        );
        let side = side_of(&self.theta, m.0, m.1)?;

        self.step += 1;
        let k = self.level;
        let t_k = self.theta.partial_quotient(k)?;
        let prev = self.principals[k];
        let prev2 = self.principals[k - 1];
        let expected = (
            combine(self.step, prev.0, prev2.0)?,
            combine(self.step, prev.1, prev2.1)?,
        );
        let expected_side = if k.is_multiple_of(2) { Side::Left } else { Side::Right };
        if expected != m || expected_side != side {
            return Err(Error::Consistency(format!(
                "descent produced {}/{} ({side:?}) but partial quotients give {}/{} ({expected_side:?})",
                m.0, m.1, expected.0, expected.1
            )));
        }
        let kind = if self.step == t_k {
            self.principals.push(m);
            self.level += 1;
            self.step = 0;
            ConvergentKind::Principal(k)
        } else {
            ConvergentKind::Intermediate { k, t: self.step }
        };

        match side {
            Side::Left => self.left = m,
            Side::Right => self.right = m,
        }
        let depth = self.entries.len();
        self.index.insert(m, depth);
        self.entries.push(Convergent {
            a: m.0,
            b: m.1,
            kind,
            side,
            depth,
        });
        Ok(())
    }

    pub fn theta(&self) -> &ThetaSpec {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Convergent] {
        &self.entries
    }

    pub fn get(&self, depth: usize) -> Option<&Convergent> {
        self.entries.get(depth)
    }

    /// The entry for a letter, or [`Error::UnknownLetter`].
    pub fn letter(&self, x: usize) -> Result<&Convergent> {
        self.entries.get(x).ok_or(Error::UnknownLetter(x))
    }

    pub fn depth_of(&self, a: u64, b: u64) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }

    /// The principal convergent `c_k` for `k >= -1`.
    pub fn principal(&self, k: isize) -> Result<(u64, u64)> {
        assert!(k >= -1, "principal convergents start at c_-1");
        let idx = (k + 1) as usize;
        if let Some(&c) = self.principals.get(idx) {
            return Ok(c);
        }
        let mut prev2 = self.principals[self.principals.len() - 2];
        let mut prev = self.principals[self.principals.len() - 1];
        for j in self.principals.len()..=idx {
            // principals[j] is c_{j-1}
            let t = self.theta.partial_quotient(j - 1)?;
            let next = (combine(t, prev.0, prev2.0)?, combine(t, prev.1, prev2.1)?);
            prev2 = prev;
            prev = next;
        }
        Ok(prev)
    }

    /// The partner `p/q` of letter `x`: the next principal convergent when
    /// `x` is principal (or formal), the preceding one when intermediate.
    pub fn partner(&self, x: usize) -> Result<(u64, u64)> {
        match self.letter(x)?.kind {
            ConvergentKind::Formal => self.principal(0),
            ConvergentKind::Principal(k) => self.principal(k as isize + 1),
            ConvergentKind::Intermediate { k, .. } => self.principal(k as isize - 1),
        }
    }

    /// Continued fraction `[1; t1, ..., t]` of letter `x` as it arises on the
    /// ladder (the last term is the partial step for intermediates; empty
    /// for `1/0`). Its terms sum to the depth.
    pub fn continued_fraction(&self, x: usize) -> Result<Vec<u64>> {
        let (k, last) = match self.letter(x)?.kind {
            ConvergentKind::Formal => return Ok(Vec::new()),
            ConvergentKind::Principal(k) => (k, None),
            ConvergentKind::Intermediate { k, t } => (k, Some(t)),
        };
        let mut terms = (0..k).map(|j| self.theta.partial_quotient(j)).collect::<Result<Vec<_>>>()?;
        terms.push(match last {
            Some(t) => t,
            None => self.theta.partial_quotient(k)?,
        });
        Ok(terms)
    }

    /// The principal convergent immediately preceding letter `x`, if any.
    pub fn preceding_principal(&self, x: usize) -> Result<Option<(u64, u64)>> {
        match self.letter(x)?.kind {
            ConvergentKind::Formal | ConvergentKind::Principal(0) => Ok(None),
            ConvergentKind::Principal(k) | ConvergentKind::Intermediate { k, .. } => {
                self.principal(k as isize - 1).map(Some)
            }
        }
    }

    /// The first `n` members of the Hurwitz chain.
    pub fn hurwitz_chain(&mut self, n: usize) -> Result<Vec<HurwitzPair>> {
        self.extend_to(n + 1)?;
        let mut chain = Vec::with_capacity(n);
        let mut pair = HurwitzPair {
            left: self.entries[1],
            right: self.entries[0],
        };
        for m in 0..n {
            if m > 0 {
                let next = self.entries[m + 1];
                if next.fraction() != pair.mediant() {
                    return Err(Error::Consistency(format!(
                        "ladder entry {next} is not the mediant of {pair}"
                    )));
                }
                match next.side {
                    Side::Left => pair.left = next,
                    Side::Right => pair.right = next,
                }
            }
            chain.push(pair);
        }
        Ok(chain)
    }
}

fn combine(t: u64, x: u64, y: u64) -> Result<u64> {
    t.checked_mul(x)
        .and_then(|v| v.checked_add(y))
        .ok_or(Error::Overflow("convergent recurrence"))
}

/// Side of `a/b` relative to `theta`; equality is impossible for irrational
/// `theta` and reported as an internal error.
pub fn side_of(theta: &ThetaSpec, a: u64, b: u64) -> Result<Side> {
    let f = LinearForm::new(
        -i64::try_from(a).map_err(|_| Error::Overflow("numerator"))?,
        i64::try_from(b).map_err(|_| Error::Overflow("denominator"))?,
    );
    match theta.sign_of_form(f)? {
        Ordering::Greater => Ok(Side::Left),
        Ordering::Less => Ok(Side::Right),
        Ordering::Equal => Err(Error::Consistency(format!("{a}/{b} equals theta"))),
    }
}

/// The first `n` convergents in ladder order.
pub fn convergent_ladder(theta: &ThetaSpec, n: usize) -> Result<Vec<Convergent>> {
    let mut ladder = Ladder::build(theta, n)?;
    ladder.entries.truncate(n);
    Ok(ladder.entries)
}

/// The first `n` members of the Hurwitz chain of `theta`.
pub fn hurwitz_chain(theta: &ThetaSpec, n: usize) -> Result<Vec<HurwitzPair>> {
    Ladder::new(theta).hurwitz_chain(n)
}

/// Row of `a/b` in the Stern-Brocot tree: 0 for `1/0`, otherwise the sum of
/// the partial quotients of `a/b`.
pub fn stern_brocot_depth(a: u64, b: u64) -> Result<usize> {
    if (a, b) == (1, 0) {
        return Ok(0);
    }
    if b == 0 {
        return Err(Error::InvalidFraction { a, b, reason: "zero denominator" });
    }
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidFraction { a, b, reason: "not in lowest terms" });
    }
    if a < b || a > 2 * b {
        return Err(Error::InvalidFraction { a, b, reason: "outside [1, 2]" });
    }
    let (mut p, mut q) = (a, b);
    let mut sum = 0u64;
    while q != 0 {
        sum += p / q;
        (p, q) = (q, p % q);
    }
    Ok(sum as usize)
}

/// Which approximations count as competitors in
/// [`is_best_approx_second_kind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxSide {
    TwoSided,
    Left,
    Right,
}

/// Brute-force test that `p/q` is a best approximation of the second kind:
/// `|q*theta - p| < |q'*theta - p'|` for every other `p'/q'` with
/// `q' <= q` (restricted to the same side for the one-sided variants).
/// `1/0` is the only competitor with `q' = 0`.
pub fn is_best_approx_second_kind(
    theta: &ThetaSpec,
    p: u64,
    q: u64,
    side: ApproxSide,
) -> Result<bool> {
    let own_side = if (p, q) == (1, 0) {
        Side::Right
    } else if q == 0 {
        return Ok(false);
    } else {
        side_of(theta, p, q)?
    };
    match (side, own_side) {
        (ApproxSide::Left, Side::Right) | (ApproxSide::Right, Side::Left) => return Ok(false),
        _ => {}
    }
    let target = distance(theta, p, q)?;
    let beats_target = |p2: u64, q2: u64| -> Result<bool> {
        if (p2, q2) == (p, q) {
            return Ok(false);
        }
        let d = distance(theta, p2, q2)?;
        Ok(theta.compare(d, target)? != Ordering::Greater)
    };
    if side != ApproxSide::Left && (p, q) != (1, 0) && beats_target(1, 0)? {
        return Ok(false);
    }
    for q2 in 1..=q {
        let below = theta.floor(q2, FloorMode::TimesTheta)?;
        let mut candidates = Vec::with_capacity(2);
        if side != ApproxSide::Right {
            candidates.push(below);
        }
        if side != ApproxSide::Left {
            candidates.push(below + 1);
        }
        for p2 in candidates {
            if beats_target(p2, q2)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `|q*theta - p|` as a non-negative linear form.
fn distance(theta: &ThetaSpec, p: u64, q: u64) -> Result<LinearForm> {
    let f = LinearForm::new(
        -i64::try_from(p).map_err(|_| Error::Overflow("numerator"))?,
        i64::try_from(q).map_err(|_| Error::Overflow("denominator"))?,
    );
    Ok(if theta.sign_of_form(f)? == Ordering::Less { -f } else { f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn fracs(v: &[Convergent]) -> Vec<(u64, u64)> {
        v.iter().map(Convergent::fraction).collect()
    }

    /// a/b < log2(3) <=> 2^a < 3^b
    fn below_log2_3(a: u64, b: u64) -> bool {
        BigUint::from(2u8).pow(a as u32) < BigUint::from(3u8).pow(b as u32)
    }

    /// a/b < phi <=> a^2 - a*b - b^2 < 0 (for a/b > 0)
    fn below_phi(a: u64, b: u64) -> bool {
        let (a, b) = (a as i128, b as i128);
        a * a - a * b - b * b < 0
    }

    /// Independent Stern-Brocot descent driven by a side predicate.
    fn descent(below: impl Fn(u64, u64) -> bool, n: usize) -> Vec<((u64, u64), (u64, u64))> {
        let (mut l, mut r) = ((1, 1), (1, 0));
        let mut out = vec![(l, r)];
        while out.len() < n {
            let m = (l.0 + r.0, l.1 + r.1);
            if below(m.0, m.1) {
                l = m
            } else {
                r = m
            }
            out.push((l, r));
        }
        out
    }

    #[test]
    fn ladder_log2_3_matches_table() {
        let l = convergent_ladder(&ThetaSpec::log2_3(), 11).unwrap();
        assert_eq!(
            fracs(&l),
            vec![
                (1, 0), (1, 1), (2, 1), (3, 2), (5, 3), (8, 5),
                (11, 7), (19, 12), (27, 17), (46, 29), (65, 41)
            ]
        );
        assert!(l.iter().enumerate().all(|(i, c)| c.depth == i));
        assert_eq!(l[4].kind, ConvergentKind::Intermediate { k: 3, t: 1 });
        assert_eq!(l[5].kind, ConvergentKind::Principal(3));
        assert_eq!(l[9].kind, ConvergentKind::Intermediate { k: 5, t: 2 });
        for c in &l[1..] {
            assert_eq!(c.side == Side::Left, below_log2_3(c.a, c.b));
        }
        let ladder = Ladder::build(&ThetaSpec::log2_3(), 11).unwrap();
        assert_eq!(ladder.continued_fraction(0).unwrap(), Vec::<u64>::new());
        assert_eq!(ladder.continued_fraction(4).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(ladder.continued_fraction(10).unwrap(), vec![1, 1, 1, 2, 2, 3]);
        for x in 0..11 {
            let sum: u64 = ladder.continued_fraction(x).unwrap().iter().sum();
            assert_eq!(sum as usize, x);
        }
    }

    #[test]
    fn ladder_short_and_golden() {
        for theta in [ThetaSpec::golden(), ThetaSpec::pi_minus_2(), ThetaSpec::log2_3()] {
            assert_eq!(fracs(&convergent_ladder(&theta, 2).unwrap()), vec![(1, 0), (1, 1)]);
        }
        let phi = convergent_ladder(&ThetaSpec::golden(), 6).unwrap();
        let oracle: Vec<_> = {
            let chain = descent(below_phi, 5);
            let mut v = vec![(1, 0), (1, 1)];
            for w in chain.windows(2) {
                v.push(if w[1].0 != w[0].0 { w[1].0 } else { w[1].1 });
            }
            v
        };
        assert_eq!(fracs(&phi), oracle);
        assert_eq!(fracs(&phi), vec![(1, 0), (1, 1), (2, 1), (3, 2), (5, 3), (8, 5)]);
        assert!(phi[1..].iter().all(Convergent::is_principal));
    }

    #[test]
    fn depth_values() {
        assert_eq!(stern_brocot_depth(1, 0).unwrap(), 0);
        assert_eq!(stern_brocot_depth(1, 1).unwrap(), 1);
        assert_eq!(stern_brocot_depth(2, 1).unwrap(), 2);
        assert_eq!(stern_brocot_depth(19, 12).unwrap(), 7);
        assert_eq!(stern_brocot_depth(65, 41).unwrap(), 10);
        assert!(stern_brocot_depth(4, 2).is_err());
        assert!(stern_brocot_depth(5, 2).is_err());
        assert!(stern_brocot_depth(0, 1).is_err());
        assert!(stern_brocot_depth(3, 0).is_err());
    }

    #[test]
    fn chain_examples() {
        let pairs = |theta: &ThetaSpec, n| -> Vec<((u64, u64), (u64, u64))> {
            hurwitz_chain(theta, n)
                .unwrap()
                .iter()
                .map(|p| (p.left.fraction(), p.right.fraction()))
                .collect()
        };
        let t = ThetaSpec::log2_3();
        assert_eq!(pairs(&t, 4), descent(below_log2_3, 4));
        assert_eq!(
            pairs(&t, 4),
            vec![((1, 1), (1, 0)), ((1, 1), (2, 1)), ((3, 2), (2, 1)), ((3, 2), (5, 3))]
        );
        assert_eq!(pairs(&ThetaSpec::pi_minus_2(), 1), vec![((1, 1), (1, 0))]);
        let phi = pairs(&ThetaSpec::golden(), 5);
        assert_eq!(phi, descent(below_phi, 5));
        assert_eq!(phi[4], ((8, 5), (5, 3)));
        for p in hurwitz_chain(&t, 30).unwrap() {
            assert_eq!(p.determinant(), 1);
        }
    }

    #[test]
    fn mediant_depth_rule() {
        let theta = ThetaSpec::pi_minus_2();
        for p in hurwitz_chain(&theta, 40).unwrap() {
            let (a, b) = p.mediant();
            let d = stern_brocot_depth(a, b).unwrap();
            let dl = stern_brocot_depth(p.left.a, p.left.b).unwrap();
            let dr = stern_brocot_depth(p.right.a, p.right.b).unwrap();
            assert_eq!(d, 1 + dl.max(dr));
        }
    }

    #[test]
    fn best_approximation_examples() {
        let t = ThetaSpec::log2_3();
        assert!(is_best_approx_second_kind(&t, 19, 12, ApproxSide::Left).unwrap());
        assert!(is_best_approx_second_kind(&t, 5, 3, ApproxSide::Right).unwrap());
        assert!(!is_best_approx_second_kind(&t, 5, 3, ApproxSide::TwoSided).unwrap());
        assert!(is_best_approx_second_kind(&t, 3, 2, ApproxSide::TwoSided).unwrap());
        assert!(!is_best_approx_second_kind(&t, 4, 3, ApproxSide::Left).unwrap());
        assert!(is_best_approx_second_kind(&t, 1, 0, ApproxSide::Right).unwrap());
        for theta in [ThetaSpec::golden(), ThetaSpec::pi_minus_2(), t] {
            assert!(!is_best_approx_second_kind(&theta, 0, 1, ApproxSide::Left).unwrap());
        }
    }

    #[test]
    fn partners() {
        let l = Ladder::build(&ThetaSpec::log2_3(), 12).unwrap();
        assert_eq!(l.partner(0).unwrap(), (1, 1));
        assert_eq!(l.partner(2).unwrap(), (3, 2));
        assert_eq!(l.partner(4).unwrap(), (3, 2));
        // 65/41 is c_5; the next principal is c_6 = 84/53.
        assert_eq!(l.partner(10).unwrap(), (84, 53));
        assert_eq!(l.principal(7).unwrap(), (485, 306));
        assert_eq!(l.preceding_principal(1).unwrap(), None);
        assert_eq!(l.preceding_principal(4).unwrap(), Some((3, 2)));
        assert!(matches!(l.letter(99), Err(Error::UnknownLetter(99))));
    }
}
