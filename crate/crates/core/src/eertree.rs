//! Palindromic tree (eertree) over an unbounded integer alphabet.
//!
//! Appending a letter creates a new node exactly when the longest
//! palindromic suffix of the extended word is new, i.e. occurs only once.
//! A word is rich iff every append creates a node.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Letter, LetterWord};

const IMAGINARY: usize = 0;
const EMPTY: usize = 1;

#[derive(Debug, Clone)]
struct Node {
    len: isize,
    link: usize,
    edges: HashMap<Letter, usize>,
    /// Number of prefixes for which this is the longest palindromic suffix.
    count: usize,
    /// End position (exclusive) of the first occurrence.
    first_end: usize,
    /// Sorted distinct letters of the palindrome.
    alphabet: Vec<Letter>,
}

impl Node {
    fn root(len: isize, link: usize) -> Self {
        Node {
            len,
            link,
            edges: HashMap::new(),
            count: 0,
            first_end: 0,
            alphabet: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Eertree {
    nodes: Vec<Node>,
    word: Vec<Letter>,
    /// Node of the longest palindromic suffix of the current word.
    suffix: usize,
}

impl Default for Eertree {
    fn default() -> Self {
        Self::new()
    }
}

impl Eertree {
    pub fn new() -> Self {
        Eertree {
            nodes: vec![Node::root(-1, IMAGINARY), Node::root(0, IMAGINARY)],
            word: Vec::new(),
            suffix: EMPTY,
        }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Number of distinct non-empty palindromic factors seen so far.
    pub fn distinct_palindromes(&self) -> usize {
        self.nodes.len() - 2
    }

    /// Walk suffix links from `node` until `X` can be extended by `c` on both sides.
    fn extendable(&self, mut node: usize, pos: usize, c: Letter) -> usize {
        loop {
            let len = self.nodes[node].len;
            if len == -1 {
                return node;
            }
            let len = len as usize;
            if pos > len && self.word[pos - len - 1] == c {
                return node;
            }
            node = self.nodes[node].link;
        }
    }

    /// Append a letter; returns 1 if a new palindrome appeared, else 0.
    pub fn append(&mut self, c: Letter) -> usize {
        let pos = self.word.len();
        self.word.push(c);
        let parent = self.extendable(self.suffix, pos, c);
        if let Some(&existing) = self.nodes[parent].edges.get(&c) {
            self.suffix = existing;
            self.nodes[existing].count += 1;
            return 0;
        }
        let len = self.nodes[parent].len + 2;
        let link = if len == 1 {
            EMPTY
        } else {
            let l = self.extendable(self.nodes[parent].link, pos, c);
            self.nodes[l].edges[&c]
        };
        let mut alphabet = self.nodes[parent].alphabet.clone();
        if let Err(at) = alphabet.binary_search(&c) {
            alphabet.insert(at, c);
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            len,
            link,
            edges: HashMap::new(),
            count: 1,
            first_end: pos + 1,
            alphabet,
        });
        self.nodes[parent].edges.insert(c, id);
        self.suffix = id;
        1
    }

    /// Longest palindromic suffix of the current word.
    pub fn longest_palindromic_suffix(&self) -> &[Letter] {
        let len = self.nodes[self.suffix].len.max(0) as usize;
        &self.word[self.word.len() - len..]
    }

    /// Every distinct non-empty palindromic factor, at its first occurrence.
    pub fn palindromes(&self) -> impl Iterator<Item = &[Letter]> + '_ {
        self.nodes[2..].iter().map(move |n| {
            let len = n.len as usize;
            &self.word[n.first_end - len..n.first_end]
        })
    }

    /// Largest number of distinct letters in any palindromic factor.
    pub fn max_palindrome_alphabet(&self) -> usize {
        self.nodes[2..].iter().map(|n| n.alphabet.len()).max().unwrap_or(0)
    }

    /// Times the current longest palindromic suffix has been the longest
    /// palindromic suffix of a prefix.
    pub fn suffix_count(&self) -> usize {
        self.nodes[self.suffix].count
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Richness {
    pub rich: bool,
    /// 0-based position of the first letter whose prefix has no ups.
    pub first_violation: Option<usize>,
}

/// Richness by the ups criterion: every prefix ends in a uni-occurrent
/// palindromic suffix.
pub fn is_rich(word: &[Letter]) -> Richness {
    let mut tree = Eertree::new();
    let first_violation = word.iter().position(|&c| tree.append(c) == 0);
    Richness {
        rich: first_violation.is_none(),
        first_violation,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpsReport {
    pub prefix_length: usize,
    pub longest_palindromic_suffix: LetterWord,
    /// The ups, present iff the longest palindromic suffix is uni-occurrent.
    pub ups: Option<LetterWord>,
    pub is_uni_occurrent: bool,
}

/// Uni-occurrent palindromic suffix of the length-`k` prefix.
pub fn ups_of_prefix(word: &[Letter], k: usize) -> Result<UpsReport> {
    if k == 0 || k > word.len() {
        return Err(Error::OutOfRange { index: k, len: word.len() });
    }
    let mut tree = Eertree::new();
    let mut last = 0;
    for &c in &word[..k] {
        last = tree.append(c);
    }
    let lps = LetterWord::new(tree.longest_palindromic_suffix().to_vec());
    let uni = last == 1;
    Ok(UpsReport {
        prefix_length: k,
        ups: uni.then(|| lps.clone()),
        longest_palindromic_suffix: lps,
        is_uni_occurrent: uni,
    })
}

/// Ups reports for every prefix length `1..=word.len()` in one pass.
pub fn ups_of_all_prefixes(word: &[Letter]) -> Vec<UpsReport> {
    let mut tree = Eertree::new();
    word.iter()
        .enumerate()
        .map(|(i, &c)| {
            let uni = tree.append(c) == 1;
            let lps = LetterWord::new(tree.longest_palindromic_suffix().to_vec());
            UpsReport {
                prefix_length: i + 1,
                ups: uni.then(|| lps.clone()),
                longest_palindromic_suffix: lps,
                is_uni_occurrent: uni,
            }
        })
        .collect()
}

/// Largest alphabet among the palindromic factors of `word`.
pub fn palindrome_alphabet_bound(word: &[Letter]) -> usize {
    let mut tree = Eertree::new();
    for &c in word {
        tree.append(c);
    }
    tree.max_palindrome_alphabet()
}
