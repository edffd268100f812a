use std::fmt;

use thiserror::Error;

use crate::sequences::Index;

/// What went wrong while reading element or term text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    WrongStructure,
    NonCanonicalizable,
    NonAffineExponent,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::WrongStructure => "wrong structure",
            ParseErrorKind::NonCanonicalizable => "not canonicalizable",
            ParseErrorKind::NonAffineExponent => "non-affine exponent",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, position: usize, message: impl Into<String>) -> Self {
        ParseError {
            kind,
            position,
            message: message.into(),
        }
    }

    pub fn syntax(position: usize, message: impl Into<String>) -> Self {
        Self::new(ParseErrorKind::Syntax, position, message)
    }
}

/// Errors raised by structure operations, certificate constructors and theorem transformers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown structure `{0}`")]
    UnknownStructure(String),
    #[error("structure `{0}` is not dense")]
    NotDense(String),
    #[error("structure `{0}` is not shrinkable")]
    NotShrinkable(String),
    #[error("structure `{0}` is not totally ordered")]
    NotTotallyOrdered(String),
    #[error("structure `{0}` is not a ring")]
    NotARing(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("f must be positive")]
    NonPositiveF,
    #[error("no natural number n with n*f > g")]
    NoSuchN,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("index {index} precedes sequence start {start}")]
    IndexBeforeStart { index: Index, start: Index },
    #[error("index overflow: {0}")]
    IndexOverflow(String),
    #[error("exact evaluation too expensive: {0}")]
    TooExpensive(String),
    #[error("algebra has dimension 0")]
    EmptyAlgebra,
    #[error("invalid structure constants: {0}")]
    InvalidConstants(String),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(String),
    #[error("bound M must be positive, got {0}")]
    NonPositiveBound(String),
    #[error("r = 1 has no geometric sum")]
    ROne,
    #[error("no null certificate: {0}")]
    NoNullCertificate(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("terms not decreasing on probe window at index {0}")]
    NotDecreasingOnProbe(Index),
    #[error("terms not strictly decreasing on probe window at index {0}")]
    NotStrictlyDecreasingOnProbe(Index),
    #[error("term not positive on probe window at index {0}")]
    NotPositiveOnProbe(Index),
    #[error("sandwich x_n <= y_n <= z_n fails at index {0}")]
    SandwichViolatedOnProbe(Index),
    #[error("ratio bound fails at index {0}")]
    RatioViolatedOnProbe(Index),
    #[error("bound fails at index {0}")]
    BoundViolatedOnProbe(Index),
    #[error("norm of term exceeds the absolute series term at index {0}")]
    NormMismatchOnProbe(Index),
    #[error("invalid input certificate: {0}")]
    InvalidInputCertificate(String),
    #[error("invalid document: {0}")]
    Json(String),
}

impl Error {
    /// True for errors that mean an input violated a stated precondition.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            Error::Parse(_) | Error::Json(_) | Error::UnknownStructure(_) | Error::InvalidConstants(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
