use thiserror::Error;

/// Malformed Dowker input. Undrawability is not an error; see [`crate::drawability::Realization`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("label {0} appears more than once")]
    DuplicateLabel(u32),
    #[error("label {label} is outside 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("too many crossings: {0}")]
    TooLarge(usize),
    #[error("cannot parse code text: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("no move site matches the descriptor")]
    SiteNotPresent,
    #[error("pairs match numerically but do not bound a triangular face")]
    IncoherentTriangle,
    #[error("the code is not drawable")]
    Undrawable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("axiom {axiom} fails at indices {witness:?}")]
    AxiomViolation { axiom: u8, witness: Vec<usize> },
    #[error("entry {value} at ({row},{col}) is outside 0..{k}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, k: usize },
    #[error("table is not square")]
    NotSquare,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("conjugacy class is empty")]
    EmptyClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("division by zero in skein recursion")]
    DivisionByZero,
}

/// Invariants are only defined on drawable codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the code is not drawable")]
pub struct Undrawable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("generator {letter} is outside 1..={max}")]
    LetterOutOfRange { letter: i32, max: u32 },
    #[error("braid words act on different strand counts")]
    StrandMismatch,
    #[error("the rewrite pattern does not match at position {0}")]
    PatternMismatch(usize),
    #[error("the last letter is not a lone top generator")]
    CannotDestabilize,
    #[error("the lattice move is blocked")]
    MoveBlocked,
    #[error("cannot parse: {0}")]
    Parse(String),
}
