use thiserror::Error;

/// Errors reported by code construction, encoding and decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("frozen-set format error on line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("frozen position {0} carries a nonzero bit")]
    FrozenBitSet(usize),
    #[error("path set is empty")]
    EmptyPathSet,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, actual })
    }
}
