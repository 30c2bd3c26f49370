use thiserror::Error;

/// Errors raised by the library. Every variant maps onto a stable
/// machine-readable code through [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("quadratic form is degenerate")]
    Degenerate,

    #[error("gram matrix must be symmetric with zero diagonal")]
    InvalidGram,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no connector exists for a form of dimension {dim} with Arf invariant {arf}")]
    ExcludedCase { dim: usize, arf: u8 },

    #[error("matrix does not preserve the quadratic form")]
    NotOrthogonal,

    #[error("transvection vector {0} has g = 0")]
    InvalidTransvection(String),

    #[error("no transvection path from {from} to {to}")]
    NoPath { from: String, to: String },

    #[error("dimension {dim} exceeds the resource guard of {max}")]
    DimensionGuard { dim: usize, max: usize },

    #[error(
        "immersions are not regularly homotopic: the mapping class does not preserve the form"
    )]
    NotRegularlyHomotopic,

    #[error("orientation bits differ between the summands")]
    EpsilonMismatch,

    #[error("invalid generator token: {0}")]
    InvalidToken(String),

    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
}

impl Error {
    /// Short kebab-case identifier used on the CLI diagnostic stream.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::Parse { .. } => "parse-error",
            Error::Degenerate => "degenerate-form",
            Error::InvalidGram => "invalid-gram",
            Error::Precondition(_) => "precondition",
            Error::ExcludedCase { .. } => "excluded-case",
            Error::NotOrthogonal => "not-orthogonal",
            Error::InvalidTransvection(_) => "invalid-transvection",
            Error::NoPath { .. } => "no-path",
            Error::DimensionGuard { .. } => "dimension-guard",
            Error::NotRegularlyHomotopic => "not-regularly-homotopic",
            Error::EpsilonMismatch => "epsilon-mismatch",
            Error::InvalidToken(_) => "invalid-token",
            Error::GenusMismatch(..) => "genus-mismatch",
        }
    }

    /// Parse failures are distinguished from semantic failures by the CLI.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
