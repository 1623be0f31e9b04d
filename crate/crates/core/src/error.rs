use thiserror::Error;

use crate::automata::StateId;

/// Errors produced by automaton construction, analysis and tester setup.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("alphabet contains duplicate symbol '{0}'")]
    DuplicateSymbol(char),

    #[error("pad symbol '{0}' is not part of the alphabet")]
    PadNotInAlphabet(char),

    #[error("symbol '{0}' is not part of the alphabet")]
    UnknownSymbol(char),

    #[error("regex syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("state {state} is outside the valid range 0..{count}")]
    InvalidState { state: StateId, count: usize },

    #[error("automata are defined over different alphabets")]
    AlphabetMismatch,

    #[error("construction exceeded the cap of {cap} states")]
    StateCapExceeded { cap: usize },

    #[error("iteration cap of {cap} steps exceeded while {what}")]
    IterationCap { cap: u64, what: &'static str },

    #[error("states {p} and {q} do not share a non-transient component")]
    NotCoLocated { p: StateId, q: StateId },

    #[error("exhaustive search guard exceeded: n = {n} > {limit}")]
    GuardExceeded { n: usize, limit: usize },

    #[error("language is not suffix-free")]
    NotSuffixFree,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("language is not a finite union of trivial and suffix-free languages")]
    NoOneSidedTester,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("malformed automaton file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
