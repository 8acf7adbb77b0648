use std::fmt;

/// Crate-wide error type. Variants map onto the CLI exit-code classes:
/// `TheoremViolated` is its own class, `Parse` is a usage problem, and
/// everything else is a domain error naming the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different rings.
    RingMismatch,
    /// Element enumeration requested for ℤ.
    InfiniteRing,
    /// A point, exponent vector or coefficient vector has the wrong length.
    ArityMismatch {
        expected: usize,
        got: usize,
    },
    /// Invalid ring descriptor (bad modulus, reducible polynomial, ...).
    InvalidDescriptor(String),
    EmptyAxis,
    DuplicateAxisElement,
    GridTooLarge {
        points: u128,
        limit: u128,
    },
    ScanTooLarge {
        steps: u128,
        limit: u128,
    },
    GridNotDivision,
    GridNotIntegral,
    GridNotBoolean,
    PointNotInGrid,
    /// Total or partial degree exceeds the bound required by the operation.
    DegreeTooLarge(String),
    /// The multiindex is not d-leading; carries the offending monomial.
    NotDLeading {
        witness: Vec<u32>,
    },
    /// A named precondition does not hold.
    Precondition(String),
    /// Pointwise division N(x)·c = P(x) has no (unique) solution.
    DivisionFailed(String),
    /// An identity guaranteed by a theorem failed. Must never fire; when it
    /// does it signals a bug, not a user error.
    TheoremViolated(String),
    /// Malformed input (JSON or the ASCII polynomial syntax).
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "ring mismatch"),
            Error::InfiniteRing => write!(f, "infinite ring"),
            Error::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected}, got {got}")
            }
            Error::InvalidDescriptor(msg) => write!(f, "invalid ring descriptor: {msg}"),
            Error::EmptyAxis => write!(f, "grid axis is empty"),
            Error::DuplicateAxisElement => write!(f, "grid axis contains a duplicate element"),
            Error::GridTooLarge { points, limit } => {
                write!(f, "grid has {points} points, exceeding the limit {limit}")
            }
            Error::ScanTooLarge { steps, limit } => {
                write!(f, "scan needs {steps} steps, exceeding the limit {limit}")
            }
            Error::GridNotDivision => write!(f, "grid not division"),
            Error::GridNotIntegral => write!(f, "grid not integral"),
            Error::GridNotBoolean => write!(f, "grid is not the Boolean grid {{0,1}}^n"),
            Error::PointNotInGrid => write!(f, "point does not lie in the grid"),
            Error::DegreeTooLarge(msg) => write!(f, "{msg}"),
            Error::NotDLeading { witness } => {
                write!(
                    f,
                    "multiindex is not d-leading, witness monomial {witness:?}"
                )
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::DivisionFailed(msg) => write!(f, "division of values failed: {msg}"),
            Error::TheoremViolated(msg) => write!(f, "theorem violated: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
