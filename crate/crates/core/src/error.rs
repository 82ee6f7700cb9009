use thiserror::Error;

use crate::foundation::Word;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is not in the alphabet")]
    SymbolNotInAlphabet(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("track mismatch: {0} vs {1}")]
    TrackMismatch(usize, usize),

    #[error("invalid object: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("index exceeded: observed {observed} > bound {bound}{}", witness.as_ref().map(|w| format!(" (word {w})")).unwrap_or_default())]
    IndexExceeded {
        observed: usize,
        bound: usize,
        witness: Option<Word>,
    },

    #[error("word tuple is not over distinct letters")]
    NotDistinctLetters,

    #[error("no echelon certificate for component {0}; fall back to the nondeterministic machine")]
    NoEchelonCertificate(usize),

    #[error("semi-simple validation failed: {0}")]
    SemiSimpleFailed(String),

    #[error("injectivity check failed: {word} has {count} decompositions")]
    InjectivityFailed { word: Word, count: usize },

    #[error("normal-form violation: {0}")]
    NormalFormViolation(String),

    #[error("code check failed: {0}")]
    CodeCheckFailed(String),

    #[error("assignment is not commutatively matching: {0}")]
    NotCommutativelyMatching(String),

    #[error("insufficient terms: need at least {needed}, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("audit failed: {0}")]
    AuditFailed(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_))
    }
}
