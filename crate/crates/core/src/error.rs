use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The partial-quotient source ran out before a decision could be made.
    #[error("precision exhausted: needed partial quotient t_{needed} but only {available} are known")]
    PrecisionExhausted { needed: usize, available: usize },

    #[error("big-integer work exceeded the budget of {budget_bits} bits")]
    BudgetExceeded { budget_bits: u64 },

    #[error("invalid theta: {0}")]
    InvalidTheta(String),

    #[error("invalid fraction {a}/{b}: {reason}")]
    InvalidFraction { a: u64, b: u64, reason: &'static str },

    #[error("unknown letter {0}")]
    UnknownLetter(usize),

    #[error("{a}/{b} is not a convergent")]
    UnknownConvergent { a: u64, b: u64 },

    #[error("index {index} out of range (length {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("sequence is not strictly ascending at position {0}")]
    NotSorted(usize),

    #[error("budget of {budget} elements cannot populate row {row}")]
    InsufficientBudget { row: usize, budget: usize },

    #[error("malformed b-file at line {line}: {reason}")]
    MalformedBFile { line: usize, reason: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// Two independent derivations disagreed. Indicates a bug.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
