use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown decoration `{token}` at position {position}")]
    UnknownDecoration { token: String, position: usize },
    #[error("word {0} does not end in x1 and has no preimage under the substitution y_n -> x0^(n-1) x1")]
    NotInImage(String),
    #[error("divergent input: {0}")]
    Divergent(String),
    #[error("tolerance {0} must be finite and at least 1e-12")]
    InvalidTolerance(f64),
    #[error("composition of {composition} does not match word length {length}")]
    LengthMismatch { composition: usize, length: usize },
    #[error("the empty word has no ladder")]
    EmptyLadder,
    #[error("index entries must be positive integers")]
    InvalidIndex,
}

pub type Result<T> = std::result::Result<T, Error>;
