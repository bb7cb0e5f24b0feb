use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("state {state} is out of range for an automaton with {count} states")]
    StateOutOfRange { state: usize, count: usize },

    #[error("state {state} is mapped to both {first} and {second}")]
    ConflictingImage {
        state: usize,
        first: usize,
        second: usize,
    },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("malformed automaton: {0}")]
    Malformed(String),

    #[error("subset construction exceeded the cap of {cap} states")]
    CapExceeded { cap: usize },

    #[error("reachable subset #{index} is not a valid state: {reason}")]
    InvalidReachable { index: usize, reason: String },

    #[error("input is not strict: {0}")]
    NotStrict(String),

    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("guard exceeded: {0}")]
    Guard(String),

    #[error("gcd of {0:?} is not 1")]
    NotCoprime(Vec<u64>),
}
