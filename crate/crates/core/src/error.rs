use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty Pauli string")]
    EmptyPauli,

    #[error("invalid Pauli letter {found:?} at position {position} (expected one of I, X, Y, Z)")]
    InvalidPauliLetter { position: usize, found: char },

    #[error("qubit count must be even and at least 2, got {0}")]
    OddQubitCount(usize),

    #[error("qubit count mismatch: expected {expected}, got {found}")]
    QubitCountMismatch { expected: usize, found: usize },

    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("the identity Pauli has no informative variance bound")]
    IdentityPauli,

    #[error("Pauli string is not Z-type (letter {letter} at qubit {qubit})")]
    NotZType { qubit: usize, letter: char },

    #[error("brick count mismatch in layer {layer}: expected {expected}, got {found}")]
    BrickCount {
        layer: u8,
        expected: usize,
        found: usize,
    },

    #[error("{what} is too large for dense evaluation (n = {n}, max {max})")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("malformed bit-vector encoding: {0}")]
    BadEncoding(String),

    #[error("fast-path disagreement at shot {shot}: z-type value {fast}, general value {general}")]
    FastPathMismatch { shot: u64, fast: i8, general: i8 },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        name,
        reason: reason.into(),
    }
}
