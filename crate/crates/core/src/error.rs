use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("words belong to different alphabets")]
    AlphabetMismatch,
    #[error("generator index {index} out of range for alphabet of rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget of {0} exhausted")]
    BudgetExhausted(usize),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
