use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value left the exact range of the scalar type in use.
    #[error("arithmetic capacity exceeded")]
    Overflow,
    #[error("configuration must be non-negative, got ({x}, {y})")]
    NegativeConfiguration { x: String, y: String },
    #[error("expected {expected} exponents, found {found}")]
    ExponentMismatch { expected: usize, found: usize },
    #[error("vector set is empty")]
    EmptySet,
    #[error("cycle {0} of a path scheme is empty")]
    EmptyCycle(usize),
    #[error("segment {0} of a simple path scheme must be a single letter")]
    NotSimple(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}
