//! The sorted sequence `S_theta = (i + j*theta)`, its gaps, and the Lambda
//! word coding those gaps by first occurrence.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::cf::{stern_brocot_depth, ConvergentKind, Ladder, Side};
use crate::error::{Error, Result};
use crate::theta::{LinearForm, ThetaSpec};
use crate::word::{Letter, LetterWord};

/// The element `i + j*theta` of `S(theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SElement {
    pub i: u64,
    pub j: u64,
}

impl SElement {
    pub const fn new(i: u64, j: u64) -> Self {
        SElement { i, j }
    }

    pub fn form(self) -> LinearForm {
        LinearForm::new(self.i as i64, self.j as i64)
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}θ", self.i, self.j)
    }
}

/// Exact ordering of two elements.
pub fn compare_elements(theta: &ThetaSpec, a: SElement, b: SElement) -> Result<Ordering> {
    if a == b {
        return Ok(Ordering::Equal);
    }
    theta.sign_of_form(LinearForm::new(
        a.i as i64 - b.i as i64,
        a.j as i64 - b.j as i64,
    ))
}

/// Lazily enumerates `S_theta` in ascending order.
///
/// The frontier holds the next unseen element of every active row
/// `{i + j*theta : i >= 0}`; row `j + 1` is activated when `j*theta` is
/// emitted.
#[derive(Debug, Clone)]
pub struct SGenerator {
    theta: ThetaSpec,
    heap: Vec<SElement>,
    comparisons: u64,
}

impl SGenerator {
    pub fn new(theta: &ThetaSpec) -> Self {
        SGenerator {
            theta: theta.clone(),
            heap: vec![SElement::new(0, 0)],
            comparisons: 0,
        }
    }

    /// Number of exact comparisons performed so far.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    fn less(&mut self, a: usize, b: usize) -> Result<bool> {
        self.comparisons += 1;
        Ok(compare_elements(&self.theta, self.heap[a], self.heap[b])? == Ordering::Less)
    }

    fn push(&mut self, e: SElement) -> Result<()> {
        self.heap.push(e);
        let mut idx = self.heap.len() - 1;
        while idx > 0 {
            let parent = (idx - 1) / 2;
            if !self.less(idx, parent)? {
                break;
            }
            self.heap.swap(idx, parent);
            idx = parent;
        }
        Ok(())
    }

    fn pop(&mut self) -> Result<SElement> {
        let last = self.heap.len() - 1;
        self.heap.swap(0, last);
        let top = self.heap.pop().expect("frontier is never empty");
        let mut idx = 0;
        loop {
            let (l, r) = (2 * idx + 1, 2 * idx + 2);
            let mut best = idx;
            if l < self.heap.len() && self.less(l, best)? {
                best = l;
            }
            if r < self.heap.len() && self.less(r, best)? {
                best = r;
            }
            if best == idx {
                break;
            }
            self.heap.swap(idx, best);
            idx = best;
        }
        Ok(top)
    }

    pub fn next_element(&mut self) -> Result<SElement> {
        let e = self.pop()?;
        self.push(SElement::new(e.i + 1, e.j))?;
        if e.i == 0 {
            self.push(SElement::new(0, e.j + 1))?;
        }
        Ok(e)
    }
}

/// The first `n` elements of `S_theta`.
pub fn generate_s(theta: &ThetaSpec, n: usize) -> Result<Vec<SElement>> {
    let mut gen = SGenerator::new(theta);
    (0..n).map(|_| gen.next_element()).collect()
}

/// A gap `|A - B*theta|` of `S_theta` together with its letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DifferenceCode {
    pub a: u64,
    pub b: u64,
    /// `Left` when the gap is `B*theta - A`, `Right` when `A - B*theta`.
    pub side: Side,
    pub letter: Letter,
}

impl DifferenceCode {
    pub fn form(&self) -> LinearForm {
        let (a, b) = (self.a as i64, self.b as i64);
        match self.side {
            Side::Left => LinearForm::new(-a, b),
            Side::Right => LinearForm::new(a, -b),
        }
    }
}

/// Normalize the gap `next - prev` (positive) to `(A, B, side)`.
pub fn gap_fraction(prev: SElement, next: SElement) -> Result<(u64, u64, Side)> {
    let di = next.i as i64 - prev.i as i64;
    let dj = next.j as i64 - prev.j as i64;
    match (di, dj) {
        (di, dj) if dj > 0 && di <= 0 => Ok((di.unsigned_abs(), dj as u64, Side::Left)),
        (di, dj) if dj <= 0 && di > 0 => Ok((di as u64, dj.unsigned_abs(), Side::Right)),
        _ => Err(Error::Consistency(format!(
            "gap from {prev} to {next} is not of the form |A - B*theta|"
        ))),
    }
}

/// Letter of the gap between two consecutive elements, via its
/// Stern-Brocot depth.
pub fn gap_letter(prev: SElement, next: SElement) -> Result<Letter> {
    let (a, b, _) = gap_fraction(prev, next)?;
    stern_brocot_depth(a, b)
}

/// A prefix of `S_theta` with its Lambda word and codebook.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaPrefix {
    /// `s_0, ..., s_n` (one more element than letters).
    pub elements: Vec<SElement>,
    pub word: LetterWord,
    /// `codebook[x]` is the gap coded by letter `x`.
    pub codebook: Vec<DifferenceCode>,
}

impl LambdaPrefix {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Index of an element within the prefix.
    pub fn index_map(&self) -> HashMap<SElement, usize> {
        self.elements.iter().enumerate().map(|(n, &e)| (e, n)).collect()
    }
}

/// The first `n` letters of the Lambda word.
///
/// Letters are assigned by first occurrence. Each new gap is also checked
/// against the convergent ladder (its fraction, side and Stern-Brocot depth
/// must all match the letter it was given).
pub fn lambda_word(theta: &ThetaSpec, n: usize) -> Result<LambdaPrefix> {
    let elements = generate_s(theta, n + 1)?;
    let mut ladder = Ladder::new(theta);
    let mut codes: HashMap<(u64, u64), Letter> = HashMap::new();
    let mut codebook = Vec::new();
    let mut word = Vec::with_capacity(n);
    for pair in elements.windows(2) {
        let (a, b, side) = gap_fraction(pair[0], pair[1])?;
        let letter = match codes.get(&(a, b)) {
            Some(&l) => l,
            None => {
                let letter = codebook.len();
                ladder.extend_to(letter + 1)?;
                let expected = ladder.letter(letter)?;
                let depth = stern_brocot_depth(a, b)?;
                if expected.fraction() != (a, b) || expected.side != side || depth != letter {
                    return Err(Error::Consistency(format!(
                        "gap {a}/{b} got letter {letter}, depth {depth}, ladder entry {expected}"
                    )));
                }
                codes.insert((a, b), letter);
                codebook.push(DifferenceCode { a, b, side, letter });
                letter
            }
        };
        word.push(letter);
    }
    Ok(LambdaPrefix {
        elements,
        word: LetterWord::new(word),
        codebook,
    })
}

/// A product of half-open integer ranges `{a + b*theta}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rectangle {
    pub a: Range<u64>,
    pub b: Range<u64>,
}

impl Rectangle {
    pub fn len(&self) -> u64 {
        (self.a.end - self.a.start) * (self.b.end - self.b.start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: SElement) -> bool {
        self.a.contains(&e.i) && self.b.contains(&e.j)
    }

    pub fn elements(&self) -> impl Iterator<Item = SElement> + '_ {
        self.b
            .clone()
            .flat_map(move |j| self.a.clone().map(move |i| SElement::new(i, j)))
    }
}

/// Number of occurrences of letter `x` in the whole Lambda word: `p*q` for
/// the partner `p/q` of the letter's convergent.
pub fn letter_count(theta: &ThetaSpec, x: Letter) -> Result<u64> {
    let ladder = Ladder::build(theta, x + 1)?;
    letter_count_in(&ladder, x)
}

pub fn letter_count_in(ladder: &Ladder, x: Letter) -> Result<u64> {
    let (p, q) = ladder.partner(x)?;
    p.checked_mul(q).ok_or(Error::Overflow("letter count"))
}

/// The elements `s_n` whose following gap is coded by `x`.
pub fn occurrence_rectangle(theta: &ThetaSpec, x: Letter) -> Result<Rectangle> {
    let ladder = Ladder::build(theta, x + 1)?;
    occurrence_rectangle_in(&ladder, x)
}

pub fn occurrence_rectangle_in(ladder: &Ladder, x: Letter) -> Result<Rectangle> {
    let c = *ladder.letter(x)?;
    let (p, q) = ladder.partner(x)?;
    let overflow = || Error::Overflow("occurrence rectangle");
    Ok(match c.side {
        Side::Left => Rectangle {
            a: c.a..c.a.checked_add(p).ok_or_else(overflow)?,
            b: 0..q,
        },
        Side::Right => Rectangle {
            a: 0..p,
            b: c.b..c.b.checked_add(q).ok_or_else(overflow)?,
        },
    })
}

/// Largest `t` such that `x^t` is a factor of the Lambda word.
pub fn max_run(theta: &ThetaSpec, x: Letter) -> Result<u64> {
    let ladder = Ladder::build(theta, x + 1)?;
    max_run_in(&ladder, x)
}

pub fn max_run_in(ladder: &Ladder, x: Letter) -> Result<u64> {
    let theta = ladder.theta();
    match ladder.letter(x)?.kind {
        ConvergentKind::Formal => theta.partial_quotient(0),
        ConvergentKind::Principal(0) => theta.partial_quotient(1),
        ConvergentKind::Principal(k) => Ok(1 + theta.partial_quotient(k + 1)?),
        ConvergentKind::Intermediate { .. } => Ok(1),
    }
}

/// Whether `uv` is a two-letter factor of the Lambda word.
pub fn is_two_letter_factor(theta: &ThetaSpec, u: Letter, v: Letter) -> Result<bool> {
    let mut ladder = Ladder::build(theta, u.max(v) + 1)?;
    is_two_letter_factor_in(&mut ladder, u, v)
}

pub fn is_two_letter_factor_in(ladder: &mut Ladder, u: Letter, v: Letter) -> Result<bool> {
    if u == v {
        return Ok(max_run_in(ladder, u)? >= 2);
    }
    // Letter 0 codes only the first gap, so nothing can precede it.
    if v == 0 {
        ladder.letter(u)?;
        return Ok(false);
    }
    is_hurwitz_pair_in(ladder, u, v)
}

/// Whether the fractions of `u` and `v` form (in either order) a member of
/// the Hurwitz chain.
pub fn is_hurwitz_pair_in(ladder: &mut Ladder, u: Letter, v: Letter) -> Result<bool> {
    let fu = ladder.letter(u)?.fraction();
    let fv = ladder.letter(v)?.fraction();
    // Both fractions appear by the time the deeper one enters the chain.
    let chain = ladder.hurwitz_chain(u.max(v).max(1))?;
    Ok(chain.iter().any(|p| p.contains(fu, fv)))
}

/// All two-letter factors predicted over letters `< alphabet`.
pub fn predicted_two_letter_factors(
    theta: &ThetaSpec,
    alphabet: usize,
) -> Result<BTreeSet<(Letter, Letter)>> {
    let mut ladder = Ladder::build(theta, alphabet + 1)?;
    let chain = ladder.hurwitz_chain(alphabet.max(1))?;
    let mut out = BTreeSet::new();
    for p in &chain {
        let (l, r) = (p.left.depth, p.right.depth);
        if l < alphabet && r < alphabet {
            for (u, v) in [(l, r), (r, l)] {
                if v != 0 {
                    out.insert((u, v));
                }
            }
        }
    }
    for x in 0..alphabet {
        if max_run_in(&ladder, x)? >= 2 {
            out.insert((x, x));
        }
    }
    Ok(out)
}

/// Hurwitz-chain membership via the Farey criterion: opposite sides and
/// unit determinant. Used to cross-check the chain walk.
pub fn is_straddling_farey_pair(theta: &ThetaSpec, f: (u64, u64), g: (u64, u64)) -> Result<bool> {
    let side = |(a, b): (u64, u64)| -> Result<Side> {
        if b == 0 {
            Ok(Side::Right)
        } else {
            crate::cf::side_of(theta, a, b)
        }
    };
    let (sf, sg) = (side(f)?, side(g)?);
    if sf == sg {
        return Ok(false);
    }
    let (l, r) = if sf == Side::Left { (f, g) } else { (g, f) };
    let det = l.1 as i128 * r.0 as i128 - l.0 as i128 * r.1 as i128;
    Ok(det == 1)
}
