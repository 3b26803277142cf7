//! The three-letter projection `gamma` of the convergent ladder and the
//! Gamma word it induces on `Lambda_theta`.

use serde::Serialize;

use crate::cf::{stern_brocot_depth, Ladder};
use crate::eertree::{is_rich, Eertree};
use crate::error::{Error, Result};
use crate::lambda::lambda_word;
use crate::theta::ThetaSpec;
use crate::word::{Letter, LetterWord};

/// `gamma` over the convergent ladder, indexed by depth (= Lambda letter).
///
/// Seeds: `gamma(1/0) = 0`, `gamma(1/1) = 1`. Every deeper entry `A/B` is
/// the mediant of the principal convergent `a/b` preceding it and
/// `(A-a)/(B-b)`, and takes the value missing from those two.
#[derive(Debug, Clone)]
pub struct GammaCode {
    ladder: Ladder,
    values: Vec<u8>,
}

impl GammaCode {
    pub fn new(theta: &ThetaSpec) -> Self {
        GammaCode {
            ladder: Ladder::new(theta),
            values: vec![0, 1],
        }
    }

    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }

    /// Make sure depths `0..n` are known.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        self.ladder.extend_to(n)?;
        while self.values.len() < n {
            let depth = self.values.len();
            let entry = *self.ladder.letter(depth)?;
            let (a, b) = self
                .ladder
                .preceding_principal(depth)?
                .ok_or_else(|| Error::Consistency(format!("{entry} has no preceding principal")))?;
            let lookup = |f: (u64, u64)| {
                self.ladder
                    .depth_of(f.0, f.1)
                    .filter(|&d| d < depth)
                    .map(|d| self.values[d])
                    .ok_or(Error::UnknownConvergent { a: f.0, b: f.1 })
            };
            let x = lookup((a, b))?;
            let y = lookup((entry.a - a, entry.b - b))?;
            if x + y > 3 || x == y {
                return Err(Error::Consistency(format!("gamma parents of {entry} are {x} and {y}")));
            }
            self.values.push(3 - x - y);
        }
        Ok(())
    }

    /// `gamma` of the ladder entry at `depth`.
    pub fn value(&mut self, depth: usize) -> Result<u8> {
        self.extend_to(depth + 1)?;
        Ok(self.values[depth])
    }

    /// `gamma(A/B)`, or [`Error::UnknownConvergent`] if `A/B` is not on
    /// the ladder.
    pub fn of_fraction(&mut self, a: u64, b: u64) -> Result<u8> {
        let unknown = Error::UnknownConvergent { a, b };
        let depth = stern_brocot_depth(a, b).map_err(|_| unknown.clone())?;
        self.extend_to(depth + 1)?;
        if self.ladder.depth_of(a, b) != Some(depth) {
            return Err(unknown);
        }
        Ok(self.values[depth])
    }
}

pub fn gamma_of_convergent(theta: &ThetaSpec, a: u64, b: u64) -> Result<u8> {
    GammaCode::new(theta).of_fraction(a, b)
}

/// The first `n` letters of `Gamma_theta`.
pub fn gamma_word(theta: &ThetaSpec, n: usize) -> Result<LetterWord> {
    let lambda = lambda_word(theta, n)?;
    project(theta, &lambda.word)
}

/// Letterwise image of a Lambda word under `gamma`.
pub fn project(theta: &ThetaSpec, word: &[Letter]) -> Result<LetterWord> {
    let mut code = GammaCode::new(theta);
    let alphabet = word.iter().max().map_or(0, |&m| m + 1);
    code.extend_to(alphabet)?;
    Ok(word.iter().map(|&x| code.values[x] as Letter).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub holds: bool,
    /// `(start, length)` of the first factor whose palindromicity changes.
    pub counterexample: Option<(usize, usize)>,
    pub windows_checked: usize,
}

/// Check that a Lambda factor is a palindrome iff its Gamma image is, for
/// every factor of length at most `max_factor_len` in the prefix.
pub fn check_palindrome_preservation(
    theta: &ThetaSpec,
    prefix_len: usize,
    max_factor_len: usize,
) -> Result<PreservationReport> {
    if max_factor_len > prefix_len {
        return Err(Error::OutOfRange { index: max_factor_len, len: prefix_len });
    }
    let lambda = lambda_word(theta, prefix_len)?;
    let gamma = project(theta, &lambda.word)?;
    Ok(compare_palindromes(&lambda.word, &gamma, max_factor_len))
}

/// Palindromicity agreement of two aligned words of equal length.
pub fn compare_palindromes(a: &[Letter], b: &[Letter], max_factor_len: usize) -> PreservationReport {
    let mut windows_checked = 0;
    for len in 1..=max_factor_len.min(a.len()) {
        for start in 0..=a.len() - len {
            windows_checked += 1;
            let pa = crate::word::is_palindrome(&a[start..start + len]);
            let pb = crate::word::is_palindrome(&b[start..start + len]);
            if pa != pb {
                return PreservationReport {
                    holds: false,
                    counterexample: Some((start, len)),
                    windows_checked,
                };
            }
        }
    }
    PreservationReport {
        holds: true,
        counterexample: None,
        windows_checked,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonRichWitness {
    /// Length of the first prefix without a uni-occurrent palindromic suffix.
    pub prefix_length: usize,
    /// Start of the shortest factor ending there that is already not rich.
    pub window_start: usize,
    pub factor: LetterWord,
}

/// Stream `Gamma_theta` through the richness checker, up to `horizon`
/// letters.
pub fn first_non_rich_prefix(theta: &ThetaSpec, horizon: usize) -> Result<Option<NonRichWitness>> {
    let gamma = gamma_word(theta, horizon)?;
    let mut tree = Eertree::new();
    let Some(end) = gamma.iter().position(|&c| tree.append(c) == 0) else {
        return Ok(None);
    };
    let window_start = (0..=end)
        .rev()
        .find(|&s| !is_rich(&gamma[s..=end]).rich)
        .expect("the whole prefix is not rich");
    Ok(Some(NonRichWitness {
        prefix_length: end + 1,
        window_start,
        factor: LetterWord::new(gamma[window_start..=end].to_vec()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergent_values() {
        let t = ThetaSpec::log2_3();
        assert_eq!(gamma_of_convergent(&t, 3, 2).unwrap(), 0);
        assert_eq!(gamma_of_convergent(&t, 46, 29).unwrap(), 2);
        assert_eq!(gamma_of_convergent(&t, 1, 0).unwrap(), 0);
        assert_eq!(gamma_of_convergent(&t, 1, 1).unwrap(), 1);
        assert_eq!(
            gamma_of_convergent(&t, 7, 4),
            Err(Error::UnknownConvergent { a: 7, b: 4 })
        );
        assert_eq!(
            gamma_of_convergent(&t, 4, 2),
            Err(Error::UnknownConvergent { a: 4, b: 2 })
        );
    }

    #[test]
    fn gamma_word_prefix() {
        let g = gamma_word(&ThetaSpec::log2_3(), 17).unwrap();
        assert_eq!(g.letters(), &[0, 1, 2, 1, 2, 0, 2, 2, 0, 2, 0, 1, 0, 2, 0, 1, 0]);
    }

    #[test]
    fn golden_cycles() {
        let mut code = GammaCode::new(&ThetaSpec::golden());
        for k in 0..30 {
            assert_eq!(code.value(k).unwrap() as usize, k % 3);
        }
    }

    #[test]
    fn triples_sum_to_three() {
        for theta in [ThetaSpec::log2_3(), ThetaSpec::golden(), ThetaSpec::pi_minus_2()] {
            let mut code = GammaCode::new(&theta);
            code.extend_to(40).unwrap();
            let mut ladder = code.ladder().clone();
            for pair in ladder.hurwitz_chain(38).unwrap() {
                let (za, zb) = pair.mediant();
                let x = code.of_fraction(pair.left.a, pair.left.b).unwrap();
                let y = code.of_fraction(pair.right.a, pair.right.b).unwrap();
                let z = code.of_fraction(za, zb).unwrap();
                let mut all = [x, y, z];
                all.sort_unstable();
                assert_eq!(all, [0, 1, 2]);
            }
        }
    }

    #[test]
    fn preservation() {
        assert!(check_palindrome_preservation(&ThetaSpec::log2_3(), 200, 30).unwrap().holds);
        assert!(check_palindrome_preservation(&ThetaSpec::log2_3(), 5, 6).is_err());
        let r = compare_palindromes(&[0, 1, 0], &[0, 1, 2], 3);
        assert_eq!(r.counterexample, Some((0, 3)));
    }

    #[test]
    fn non_rich_witness() {
        let w = first_non_rich_prefix(&ThetaSpec::log2_3(), 100).unwrap().unwrap();
        assert_eq!(w.prefix_length, 6);
        assert_eq!(w.factor.letters(), &[0, 1, 2, 1, 2, 0]);
        assert!(!is_rich(&[0, 1, 2, 1, 2, 0]).rich);
    }
}
