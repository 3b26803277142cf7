//! Complement-closed windows of `S_theta`.
//!
//! Every `K >= 1` is exactly one of `floor(k*theta) + k` ("minus") or
//! `floor(k/theta) + k` ("plus"). The nuclear window `N_K` is the stretch of
//! `S_theta` between the two houses `lo` and `hi`; it is closed under
//! `c -> lo + hi - c`, so its gap word is a palindrome. The maximal window
//! `C_K` extends `N_K` up to (not including) the top of `N_{K+1}` and mirrors
//! that extension below.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda::{compare_elements, gap_letter, SElement, SGenerator};
use crate::theta::{FloorMode, ThetaSpec};
use crate::word::LetterWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BeattyKind {
    /// `K = floor(k*theta) + k`
    Minus,
    /// `K = floor(k/theta) + k`
    Plus,
}

fn beatty_term(theta: &ThetaSpec, kind: BeattyKind, k: u64) -> Result<u64> {
    let mode = match kind {
        BeattyKind::Minus => FloorMode::TimesTheta,
        BeattyKind::Plus => FloorMode::OverTheta,
    };
    Ok(theta.floor(k, mode)? + k)
}

/// First `n` terms of the two Beatty sequences `(minus, plus)`.
pub fn beatty_sequences(theta: &ThetaSpec, n: usize) -> Result<(Vec<u64>, Vec<u64>)> {
    let terms = |kind| (1..=n as u64).map(|k| beatty_term(theta, kind, k)).collect::<Result<Vec<_>>>();
    Ok((terms(BeattyKind::Minus)?, terms(BeattyKind::Plus)?))
}

fn find_index(theta: &ThetaSpec, kind: BeattyKind, big_k: u64) -> Result<Option<u64>> {
    // Both sequences are strictly increasing with term k >= k.
    let (mut lo, mut hi) = (1u64, big_k);
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        match beatty_term(theta, kind, mid)?.cmp(&big_k) {
            Ordering::Equal => return Ok(Some(mid)),
            Ordering::Less => lo = mid + 1,
            Ordering::Greater => hi = mid - 1,
        }
    }
    Ok(None)
}

/// Which Beatty sequence contains `big_k`, and at which index `k`.
pub fn classify(theta: &ThetaSpec, big_k: u64) -> Result<(BeattyKind, u64)> {
    if big_k == 0 {
        return Err(Error::OutOfRange { index: 0, len: 0 });
    }
    let minus = find_index(theta, BeattyKind::Minus, big_k)?;
    let plus = find_index(theta, BeattyKind::Plus, big_k)?;
    match (minus, plus) {
        (Some(k), None) => Ok((BeattyKind::Minus, k)),
        (None, Some(k)) => Ok((BeattyKind::Plus, k)),
        _ => Err(Error::Consistency(format!(
            "{big_k} is not in exactly one Beatty sequence ({minus:?}, {plus:?})"
        ))),
    }
}

/// Lowest and highest elements of `N_K`.
pub fn houses(theta: &ThetaSpec, big_k: u64) -> Result<(BeattyKind, u64, SElement, SElement)> {
    let (kind, k) = classify(theta, big_k)?;
    let (lo, hi) = match kind {
        BeattyKind::Minus => (
            SElement::new(theta.floor(k, FloorMode::TimesTheta)?, 0),
            SElement::new(0, k),
        ),
        BeattyKind::Plus => (
            SElement::new(0, theta.floor(k, FloorMode::OverTheta)?),
            SElement::new(k, 0),
        ),
    };
    Ok((kind, k, lo, hi))
}

/// Complement of `c` with respect to `sum = (A, B)`, if it has
/// non-negative coordinates.
fn complement(sum: (u64, u64), c: SElement) -> Option<SElement> {
    Some(SElement::new(sum.0.checked_sub(c.i)?, sum.1.checked_sub(c.j)?))
}

/// True iff the strictly ascending list is closed under
/// `c -> first + last - c`.
pub fn is_complement_sequence(theta: &ThetaSpec, elements: &[SElement]) -> Result<bool> {
    for (n, w) in elements.windows(2).enumerate() {
        if compare_elements(theta, w[0], w[1])? != Ordering::Less {
            return Err(Error::NotSorted(n + 1));
        }
    }
    let (Some(&first), Some(&last)) = (elements.first(), elements.last()) else {
        return Ok(true);
    };
    let sum = (first.i + last.i, first.j + last.j);
    let members: HashSet<SElement> = elements.iter().copied().collect();
    Ok(elements
        .iter()
        .all(|&c| complement(sum, c).is_some_and(|d| members.contains(&d))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuclearWindow {
    pub big_k: u64,
    pub kind: BeattyKind,
    pub k: u64,
    /// Complements are taken with respect to `a + b*theta`; `a + b = K`.
    pub a: u64,
    pub b: u64,
    pub elements: Vec<SElement>,
    /// Index of the first element in `S_theta`.
    pub start_index: usize,
    pub delta: LetterWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalWindow {
    pub big_k: u64,
    pub core: NuclearWindow,
    /// Complements of the tail, ascending.
    pub head: Vec<SElement>,
    /// `{s : max(N_K) <= s < max(N_{K+1})}`.
    pub tail: Vec<SElement>,
    pub elements: Vec<SElement>,
    pub start_index: usize,
    pub delta: LetterWord,
}

/// The window `M` whose gap word is the ups of the Lambda prefix ending at
/// `s_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpsWindow {
    pub n: usize,
    pub big_k: u64,
    pub elements: Vec<SElement>,
    pub start_index: usize,
    pub delta: LetterWord,
}

/// A growing prefix of `S_theta` with an element index, shared by the
/// window constructions.
#[derive(Debug, Clone)]
pub struct ComplementStructure {
    theta: ThetaSpec,
    gen: SGenerator,
    elements: Vec<SElement>,
    index: HashMap<SElement, usize>,
}

impl ComplementStructure {
    pub fn new(theta: &ThetaSpec) -> Self {
        ComplementStructure {
            theta: theta.clone(),
            gen: SGenerator::new(theta),
            elements: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn theta(&self) -> &ThetaSpec {
        &self.theta
    }

    fn grow(&mut self) -> Result<()> {
        let e = self.gen.next_element()?;
        self.index.insert(e, self.elements.len());
        self.elements.push(e);
        Ok(())
    }

    /// `s_n`.
    pub fn element(&mut self, n: usize) -> Result<SElement> {
        while self.elements.len() <= n {
            self.grow()?;
        }
        Ok(self.elements[n])
    }

    /// Index of `e` in `S_theta`, generating as far as needed.
    pub fn index_of(&mut self, e: SElement) -> Result<usize> {
        loop {
            if let Some(&n) = self.index.get(&e) {
                return Ok(n);
            }
            if let Some(&last) = self.elements.last() {
                if compare_elements(&self.theta, last, e)? == Ordering::Greater {
                    return Err(Error::Consistency(format!("{e} is missing from S")));
                }
            }
            self.grow()?;
        }
    }

    fn slice(&mut self, from: usize, to_inclusive: usize) -> Result<Vec<SElement>> {
        self.element(to_inclusive)?;
        Ok(self.elements[from..=to_inclusive].to_vec())
    }

    fn delta(&self, elements: &[SElement]) -> Result<LetterWord> {
        elements.windows(2).map(|w| gap_letter(w[0], w[1])).collect::<Result<Vec<_>>>().map(LetterWord::new)
    }

    fn assert_complements(&self, what: &str, big_k: u64, elements: &[SElement], delta: &LetterWord) -> Result<()> {
        if !is_complement_sequence(&self.theta, elements)? || !delta.is_palindrome() {
            return Err(Error::Consistency(format!(
                "{what} window for K = {big_k} is not complement-closed"
            )));
        }
        Ok(())
    }

    pub fn nuclear(&mut self, big_k: u64) -> Result<NuclearWindow> {
        let (kind, k, lo, hi) = houses(&self.theta, big_k)?;
        let (a, b) = (lo.i + hi.i, lo.j + hi.j);
        if a + b != big_k {
            return Err(Error::Consistency(format!("houses of K = {big_k} sum to {a} + {b}")));
        }
        let start = self.index_of(lo)?;
        let end = self.index_of(hi)?;
        let elements = self.slice(start, end)?;
        let delta = self.delta(&elements)?;
        self.assert_complements("nuclear", big_k, &elements, &delta)?;
        Ok(NuclearWindow {
            big_k,
            kind,
            k,
            a,
            b,
            elements,
            start_index: start,
            delta,
        })
    }

    pub fn maximal(&mut self, big_k: u64) -> Result<MaximalWindow> {
        let core = self.nuclear(big_k)?;
        let (_, _, _, next_hi) = houses(&self.theta, big_k + 1)?;
        let hi_index = core.start_index + core.elements.len() - 1;
        let next_index = self.index_of(next_hi)?;
        let tail = self.slice(hi_index, next_index - 1)?;
        let mut head = Vec::with_capacity(tail.len());
        for &t in tail.iter().rev() {
            let c = complement((core.a, core.b), t).ok_or_else(|| {
                Error::Consistency(format!("complement of {t} leaves S for K = {big_k}"))
            })?;
            head.push(c);
        }
        let start = self.index_of(head[0])?;
        let mut elements = head[..head.len() - 1].to_vec();
        elements.extend_from_slice(&core.elements);
        elements.extend_from_slice(&tail[1..]);
        if self.slice(start, start + elements.len() - 1)? != elements {
            return Err(Error::Consistency(format!(
                "maximal window for K = {big_k} is not contiguous in S"
            )));
        }
        let delta = self.delta(&elements)?;
        self.assert_complements("maximal", big_k, &elements, &delta)?;
        Ok(MaximalWindow {
            big_k,
            core,
            head,
            tail,
            elements,
            start_index: start,
            delta,
        })
    }

    /// The unique `K` whose tail holds `s_n`, for `n >= 1`.
    pub fn tail_owner(&mut self, n: usize) -> Result<u64> {
        if n == 0 {
            return Err(Error::OutOfRange { index: 0, len: 0 });
        }
        let s = self.element(n)?;
        // Count the houses 1, 2, ... and theta, 2*theta, ... at or below s.
        let big_k = s.i
            + s.j
            + self.theta.floor(s.j, FloorMode::TimesTheta)?
            + self.theta.floor(s.i, FloorMode::OverTheta)?;
        let (_, _, _, hi) = houses(&self.theta, big_k)?;
        let (_, _, _, next_hi) = houses(&self.theta, big_k + 1)?;
        let cmp = |a, b| compare_elements(&self.theta, a, b);
        if cmp(hi, s)? == Ordering::Greater || cmp(s, next_hi)? != Ordering::Less {
            return Err(Error::Consistency(format!("s_{n} = {s} is in no tail")));
        }
        Ok(big_k)
    }

    pub fn ups_window(&mut self, n: usize) -> Result<UpsWindow> {
        let big_k = self.tail_owner(n)?;
        let outer = self.maximal(big_k)?;
        let s = self.element(n)?;
        let low = complement((outer.core.a, outer.core.b), s)
            .ok_or_else(|| Error::Consistency(format!("complement of s_{n} leaves S")))?;
        let start = self.index_of(low)?;
        if start < outer.start_index || start > outer.core.start_index {
            return Err(Error::Consistency(format!(
                "ups window for n = {n} is not between N_K and C_K"
            )));
        }
        let elements = self.slice(start, n)?;
        let delta = self.delta(&elements)?;
        Ok(UpsWindow {
            n,
            big_k,
            elements,
            start_index: start,
            delta,
        })
    }
}

pub fn nuclear_window(theta: &ThetaSpec, big_k: u64) -> Result<NuclearWindow> {
    ComplementStructure::new(theta).nuclear(big_k)
}

pub fn maximal_window(theta: &ThetaSpec, big_k: u64) -> Result<MaximalWindow> {
    ComplementStructure::new(theta).maximal(big_k)
}

pub fn ups_window(theta: &ThetaSpec, n: usize) -> Result<UpsWindow> {
    ComplementStructure::new(theta).ups_window(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eertree::ups_of_all_prefixes;
    use crate::lambda::{generate_s, lambda_word};

    fn e(i: u64, j: u64) -> SElement {
        SElement::new(i, j)
    }

    fn thetas() -> [ThetaSpec; 3] {
        [ThetaSpec::log2_3(), ThetaSpec::golden(), ThetaSpec::pi_minus_2()]
    }

    #[test]
    fn beatty_examples() {
        let (m, p) = beatty_sequences(&ThetaSpec::log2_3(), 4).unwrap();
        assert_eq!((m, p), (vec![2, 5, 7, 10], vec![1, 3, 4, 6]));
        let (m, p) = beatty_sequences(&ThetaSpec::golden(), 3).unwrap();
        assert_eq!((m, p), (vec![2, 5, 7], vec![1, 3, 4]));
    }

    #[test]
    fn beatty_partition() {
        for theta in thetas() {
            let (m, p) = beatty_sequences(&theta, 1000).unwrap();
            let mut all: Vec<u64> = m.into_iter().chain(p).filter(|&x| x <= 1000).collect();
            all.sort_unstable();
            assert_eq!(all, (1..=1000).collect::<Vec<_>>(), "{}", theta.label());
        }
    }

    #[test]
    fn complement_sequences() {
        let t = ThetaSpec::log2_3();
        assert!(is_complement_sequence(&t, &[e(1, 0), e(0, 1)]).unwrap());
        assert!(!is_complement_sequence(&t, &[e(1, 0), e(2, 0), e(0, 2)]).unwrap());
        assert!(is_complement_sequence(&t, &[e(3, 0), e(0, 2)]).unwrap());
        assert_eq!(is_complement_sequence(&t, &[e(0, 1), e(1, 0)]), Err(Error::NotSorted(1)));
        assert!(is_complement_sequence(&t, &[]).unwrap());
    }

    #[test]
    fn nuclear_examples() {
        let t = ThetaSpec::log2_3();
        let n = nuclear_window(&t, 2).unwrap();
        assert_eq!((n.kind, n.k), (BeattyKind::Minus, 1));
        assert_eq!(n.elements, vec![e(1, 0), e(0, 1)]);
        assert_eq!(n.delta.letters(), &[1]);
        let n = nuclear_window(&t, 5).unwrap();
        assert_eq!((n.kind, n.k, n.a + n.b), (BeattyKind::Minus, 2, 5));
        assert_eq!(n.elements, vec![e(3, 0), e(0, 2)]);
        assert_eq!(n.delta.letters(), &[3]);
        let n = nuclear_window(&t, 3).unwrap();
        assert_eq!((n.kind, n.k), (BeattyKind::Plus, 2));
        assert_eq!(n.elements, vec![e(0, 1), e(2, 0)]);
        assert_eq!(n.delta.letters(), &[2]);
    }

    #[test]
    fn maximal_examples() {
        let t = ThetaSpec::log2_3();
        let c = maximal_window(&t, 5).unwrap();
        assert_eq!(c.head, vec![e(1, 1), e(3, 0)]);
        assert_eq!(c.elements, vec![e(1, 1), e(3, 0), e(0, 2), e(2, 1)]);
        assert_eq!(c.delta.letters(), &[2, 3, 2]);
        let c = maximal_window(&t, 2).unwrap();
        assert_eq!(c.elements, vec![e(1, 0), e(0, 1)]);
        assert_eq!(c.delta.letters(), &[1]);
    }

    /// Membership by definition: scan a generous prefix for `lo <= s <= hi`.
    fn nuclear_by_scan(theta: &ThetaSpec, s: &[SElement], big_k: u64) -> Vec<SElement> {
        let (_, _, lo, hi) = houses(theta, big_k).unwrap();
        s.iter()
            .copied()
            .filter(|&x| {
                compare_elements(theta, lo, x).unwrap() != Ordering::Greater
                    && compare_elements(theta, x, hi).unwrap() != Ordering::Greater
            })
            .collect()
    }

    #[test]
    fn windows_up_to_fifty() {
        for theta in thetas() {
            let s = generate_s(&theta, 1500).unwrap();
            let mut cs = ComplementStructure::new(&theta);
            for big_k in 1..=50 {
                let n = cs.nuclear(big_k).unwrap();
                assert_eq!(n.elements, nuclear_by_scan(&theta, &s, big_k));
                let c = cs.maximal(big_k).unwrap();
                assert_eq!(c.head.len(), c.tail.len());
                let inner = c.core.start_index - c.start_index;
                assert_eq!(&c.delta[inner..inner + n.delta.len()], n.delta.letters());
            }
        }
    }

    #[test]
    fn ups_window_examples() {
        let t = ThetaSpec::log2_3();
        assert_eq!(ups_window(&t, 7).unwrap().delta.letters(), &[2, 3, 2]);
        assert_eq!(ups_window(&t, 4).unwrap().delta.letters(), &[1, 2, 1]);
        assert_eq!(ups_window(&t, 12).unwrap().delta.letters(), &[4]);
        assert!(ups_window(&t, 0).is_err());
    }

    #[test]
    fn ups_window_matches_eertree() {
        for theta in thetas() {
            let lam = lambda_word(&theta, 200).unwrap();
            let reports = ups_of_all_prefixes(&lam.word);
            let mut cs = ComplementStructure::new(&theta);
            for n in 1..=200 {
                let w = cs.ups_window(n).unwrap();
                assert_eq!(Some(w.delta), reports[n - 1].ups, "{} n = {n}", theta.label());
            }
        }
    }

    #[test]
    #[ignore = "unproven coverage remark; exploratory"]
    fn nuclear_windows_cover_s() {
        for theta in thetas() {
            let mut cs = ComplementStructure::new(&theta);
            let mut covered = HashSet::new();
            for big_k in 1..=60 {
                covered.extend(cs.nuclear(big_k).unwrap().elements);
            }
            for x in generate_s(&theta, 100).unwrap() {
                assert!(covered.contains(&x), "{} misses {x}", theta.label());
            }
        }
    }
}
