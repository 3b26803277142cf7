//! Independent oracles for the integration tests. Nothing here calls into
//! the library: theta is approximated by fixed-point intervals and words
//! are checked by brute force.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Fractional bits carried by every interval.
pub const BITS: u32 = 280;

const PI_DIGITS: &str = "31415926535897932384626433832795028841971693993751\
                         05820974944592307816406286208998628034825342117067";

/// `theta` lies in `[lo, hi] / 2^BITS`.
#[derive(Debug, Clone)]
pub struct Approx {
    pub lo: BigInt,
    pub hi: BigInt,
}

fn one() -> BigInt {
    BigInt::one() << BITS
}

impl Approx {
    /// `log2 3` from the binary digits of `log2 1.5`, found by repeated
    /// squaring with outward rounding.
    pub fn log2_3() -> Self {
        let work: u32 = 900;
        let scale = BigInt::one() << work;
        let two = &scale * 2;
        let (mut xl, mut xh) = (&scale * 3 / 2, &scale * 3 / 2);
        let mut frac = BigInt::zero();
        for _ in 0..BITS {
            xl = (&xl * &xl) >> work;
            xh = (&xh * &xh + &scale - 1) >> work;
            frac <<= 1;
            if xl >= two {
                frac += 1;
                xl >>= 1;
                xh = (xh + 1) >> 1;
            } else {
                assert!(xh < two, "log2 3 digit undecided");
            }
        }
        let lo = one() + frac;
        Approx { hi: &lo + 1, lo }
    }

    pub fn golden() -> Self {
        // phi * 2^BITS = (2^BITS + sqrt(5 * 4^BITS)) / 2
        let root = (BigInt::from(5) << (2 * BITS)).sqrt();
        let base = one() + root;
        Approx { lo: &base >> 1, hi: (base + 2) >> 1 }
    }

    pub fn pi_minus_2() -> Self {
        let digits = PI_DIGITS.len() as u32 - 1;
        let n: BigInt = PI_DIGITS.parse().unwrap();
        let ten = BigInt::from(10).pow(digits);
        let minus_two = &ten * 2;
        let lo = ((&n - &minus_two) << BITS) / &ten;
        let hi = (((&n + 1 - &minus_two) << BITS) + &ten - 1) / &ten;
        Approx { lo, hi }
    }

    /// Sign of `c0 + c1*theta`, or `None` if the interval cannot tell.
    pub fn sign(&self, c0: i64, c1: i64) -> Option<Ordering> {
        let base = BigInt::from(c0) << BITS;
        let (a, b) = (&base + &self.lo * c1, &base + &self.hi * c1);
        let (min, max) = if a <= b { (a, b) } else { (b, a) };
        if min.is_positive() {
            Some(Ordering::Greater)
        } else if max.is_negative() {
            Some(Ordering::Less)
        } else if min.is_zero() && max.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn floor_times(&self, k: u64) -> u64 {
        let (a, b) = ((&self.lo * k) >> BITS, (&self.hi * k) >> BITS);
        assert_eq!(a, b, "floor({k} theta) undecided");
        u64::try_from(a).unwrap()
    }

    pub fn floor_over(&self, k: u64) -> u64 {
        let num = BigInt::from(k) << BITS;
        let (a, b) = (&num / &self.hi, &num / &self.lo);
        assert_eq!(a, b, "floor({k} / theta) undecided");
        u64::try_from(a).unwrap()
    }

    /// Fixed-point bounds of `i + j*theta`.
    fn value(&self, i: u64, j: u64) -> (BigInt, BigInt) {
        let base = BigInt::from(i) << BITS;
        (&base + &self.lo * j, base + &self.hi * j)
    }

    /// The `n` smallest numbers `i + j*theta`, ascending, as `(i, j)`.
    pub fn sorted_s(&self, n: usize) -> Vec<(u64, u64)> {
        let mut bound = 4u64;
        loop {
            // Every element with value below `bound` has i < bound and
            // j < bound / theta <= bound (theta > 1).
            let mut pts: Vec<(BigInt, BigInt, u64, u64)> = Vec::new();
            let limit = BigInt::from(bound) << BITS;
            for j in 0..bound {
                for i in 0..bound {
                    let (lo, hi) = self.value(i, j);
                    if hi < limit {
                        pts.push((lo, hi, i, j));
                    }
                }
            }
            if pts.len() >= n {
                pts.sort();
                for w in pts.windows(2) {
                    assert!(w[0].1 < w[1].0, "interval overlap at {:?}", (w[0].2, w[0].3));
                }
                return pts.into_iter().take(n).map(|p| (p.2, p.3)).collect();
            }
            bound *= 2;
        }
    }
}

/// Gaps between consecutive elements, coded by first occurrence.
pub fn lambda_from_sorted(s: &[(u64, u64)]) -> Vec<usize> {
    let mut codes: HashMap<(i64, i64), usize> = HashMap::new();
    s.windows(2)
        .map(|w| {
            let gap = (w[1].0 as i64 - w[0].0 as i64, w[1].1 as i64 - w[0].1 as i64);
            let next = codes.len();
            *codes.entry(gap).or_insert(next)
        })
        .collect()
}

/// One-sided best approximations of the second kind with `1 <= q <= max_q`.
pub fn one_sided_best_approximations(theta: &Approx, max_q: u64) -> HashSet<(u64, u64)> {
    let decide = |c0: i64, c1: i64| theta.sign(c0, c1).expect("undecided comparison");
    let mut out = HashSet::new();
    // Below theta: the distance is q*theta - floor(q*theta).
    let mut best: Option<(u64, u64)> = None;
    for q in 1..=max_q {
        let p = theta.floor_times(q);
        let better = match best {
            None => true,
            Some((bp, bq)) => {
                // (q*theta - p) - (bq*theta - bp) < 0
                decide(bp as i64 - p as i64, q as i64 - bq as i64) == Ordering::Less
            }
        };
        if better {
            best = Some((p, q));
            out.insert((p, q));
        }
    }
    // Above theta, starting from 1/0 at distance 1.
    let mut best = (1u64, 0u64);
    for q in 1..=max_q {
        let p = theta.floor_times(q) + 1;
        // (p - q*theta) - (bp - bq*theta) < 0
        if decide(p as i64 - best.0 as i64, best.1 as i64 - q as i64) == Ordering::Less {
            best = (p, q);
            out.insert((p, q));
        }
    }
    out
}

pub fn is_palindrome<T: PartialEq>(w: &[T]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// Distinct non-empty palindromic factors.
pub fn brute_palindromes(w: &[usize]) -> HashSet<Vec<usize>> {
    let mut out = HashSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            if is_palindrome(&w[i..j]) {
                out.insert(w[i..j].to_vec());
            }
        }
    }
    out
}

/// Largest number of distinct letters in a palindromic factor, by
/// expansion about every centre.
pub fn brute_palindrome_alphabet(w: &[usize]) -> usize {
    let n = w.len() as isize;
    let mut best = 0;
    for i in 0..n {
        for (mut l, mut r) in [(i, i), (i - 1, i)] {
            let mut letters = HashSet::new();
            while l >= 0 && r < n && w[l as usize] == w[r as usize] {
                letters.insert(w[l as usize]);
                best = best.max(letters.len());
                l -= 1;
                r += 1;
            }
        }
    }
    best
}

/// Richness by counting: `k` distinct non-empty palindromes in a word of
/// length `k`.
pub fn brute_is_rich(w: &[usize]) -> bool {
    brute_palindromes(w).len() == w.len()
}

/// Visit every word over `0..alphabet` of length `1..=max_len` together
/// with its distinct palindrome count, maintained incrementally.
pub fn for_each_word(alphabet: usize, max_len: usize, mut visit: impl FnMut(&[usize], usize)) {
    fn walk(
        word: &mut Vec<usize>,
        pals: &mut Vec<Vec<usize>>,
        alphabet: usize,
        max_len: usize,
        visit: &mut dyn FnMut(&[usize], usize),
    ) {
        if word.len() == max_len {
            return;
        }
        for c in 0..alphabet {
            word.push(c);
            let before = pals.len();
            for start in 0..word.len() {
                let suffix = &word[start..];
                if is_palindrome(suffix) && !pals.iter().any(|p| p == suffix) {
                    pals.push(suffix.to_vec());
                }
            }
            visit(word, pals.len());
            walk(word, pals, alphabet, max_len, visit);
            pals.truncate(before);
            word.pop();
        }
    }
    walk(&mut Vec::new(), &mut Vec::new(), alphabet, max_len, &mut visit);
}

pub fn contains_factor(word: &[usize], factor: &[usize]) -> bool {
    word.windows(factor.len()).any(|w| w == factor)
}
