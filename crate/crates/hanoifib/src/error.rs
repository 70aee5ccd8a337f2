use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported rule combination: {0}")]
    Unsupported(String),
    #[error("state space too large: 3^{n} exceeds cap {cap}")]
    CapExceeded { n: u32, cap: u64 },
    #[error("invalid ZF word: {0}")]
    InvalidZfWord(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}
