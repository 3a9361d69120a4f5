use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("length {len} exceeds the supported maximum {max}")]
    LengthCap { len: usize, max: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("inflation arity mismatch: skeleton has length {skeleton}, got {blocks} blocks")]
    ArityMismatch { skeleton: usize, blocks: usize },

    #[error("inflation block {index} is empty")]
    EmptyBlock { index: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("length {len} is out of range for a class capped at {cap}")]
    OutOfRange { len: usize, cap: usize },

    #[error("search budget exhausted ({limit} units)")]
    Budget { limit: u64 },

    #[error("host length {len} exceeds the search limit {max}")]
    HostTooLong { len: usize, max: usize },

    #[error("{side} is not a proper subclass of the target at cap {cap}")]
    NotProperSubclass { side: String, cap: usize },

    #[error("{0}")]
    Domain(String),

    #[error("unknown check: {0}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
