//! Lambda words and Gamma words of irrational numbers in `(1, 2)`.
//!
//! Every comparison is exact: `theta` is described by its partial quotients
//! and never rounded.

pub mod bfile;
pub mod cf;
pub mod complement;
pub mod eertree;
pub mod error;
pub mod fixtures;
pub mod gamma;
pub mod interspersion;
pub mod lambda;
pub mod theta;
pub mod verify;
pub mod word;

pub use cf::{Convergent, ConvergentKind, HurwitzPair, Ladder, Side};
pub use eertree::Eertree;
pub use error::{Error, Result};
pub use lambda::{lambda_word, LambdaPrefix, SElement};
pub use theta::{LinearForm, ThetaSpec};
pub use word::{Letter, LetterWord};
