use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid digit {0:?}: Cantor words use only 0 and 2")]
    InvalidDigit(char),
    #[error("a Cantor point needs a nonempty cycle")]
    EmptyCycle,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation undefined on the empty set")]
    EmptySet,
    #[error("points are equal; no separating digit exists")]
    EqualPoints,
    #[error("the empty word is not part of the base")]
    EmptyBaseWord,
    #[error("rectangle has an empty side")]
    EmptyRect,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget of {bound} dense pairs exhausted")]
    BudgetExhausted { bound: usize },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("trace is not monotone at step {step}: {detail}")]
    NonMonotone { step: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
