use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::Deref;

use serde::Serialize;

/// A letter of the (unbounded) integer alphabet.
pub type Letter = usize;

/// A finite word over non-negative integer letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LetterWord(pub Vec<Letter>);

impl LetterWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        LetterWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Letter> {
        self.0
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    pub fn reversed(&self) -> LetterWord {
        LetterWord(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, k: usize) -> LetterWord {
        LetterWord(self.0[..k.min(self.0.len())].to_vec())
    }

    /// Number of occurrences of `x`.
    pub fn count(&self, x: Letter) -> usize {
        self.0.iter().filter(|&&l| l == x).count()
    }

    /// Length of the longest run `x x ... x`.
    pub fn longest_run(&self, x: Letter) -> usize {
        let mut best = 0;
        let mut cur = 0;
        for &l in &self.0 {
            cur = if l == x { cur + 1 } else { 0 };
            best = best.max(cur);
        }
        best
    }

    /// True when each letter `m > 0` first appears after letter `m - 1`
    /// and no letter is skipped.
    pub fn is_first_occurrence_coded(&self) -> bool {
        let mut next = 0;
        for &l in &self.0 {
            if l > next {
                return false;
            }
            if l == next {
                next += 1;
            }
        }
        true
    }
}

impl Deref for LetterWord {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for LetterWord {
    fn from(v: Vec<Letter>) -> Self {
        LetterWord(v)
    }
}

impl FromIterator<Letter> for LetterWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        LetterWord(iter.into_iter().collect())
    }
}

impl fmt::Display for LetterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn is_palindrome<T: PartialEq>(w: &[T]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// Code a sequence by order of first appearance: the first distinct value
/// becomes 0, the next new one 1, and so on.
pub fn first_occurrence_coding<T, I>(items: I) -> LetterWord
where
    T: Eq + Hash,
    I: IntoIterator<Item = T>,
{
    let mut seen: HashMap<T, Letter> = HashMap::new();
    items
        .into_iter()
        .map(|x| {
            let next = seen.len();
            *seen.entry(x).or_insert(next)
        })
        .collect()
}
