use core::fmt;

use crate::notation::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// `n` outside the supported range for the requested object.
    InvalidExponent {
        n: u32,
        min: u32,
        max: u32,
    },
    /// Operands built over different cyclic groups.
    ContextMismatch {
        left: u32,
        right: u32,
    },
    /// Augmentation zero where a unit was required.
    NotAUnit,
    /// The zero element has no filtration degree.
    ZeroHasNoDegree,
    IndexOutOfRange {
        index: usize,
        bound: usize,
    },
    /// `⊛` only exists for `n >= 3`.
    UnsupportedInvolution {
        n: u32,
    },
    /// The semidihedral group needs `n >= 3`.
    UnsupportedFamily {
        n: u32,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// The element is not a member of the subgroup it was queried against.
    NotInSubgroup,
    /// Exhaustive enumeration was requested above its cap.
    EnumerationCap {
        n: u32,
        max: u32,
    },
    /// The subgroup kind has no closed-form order.
    NoClosedForm,
    Parse(ParseError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidExponent { n, min, max } => {
                write!(f, "n = {n} is outside the supported range {min}..={max}")
            }
            Error::ContextMismatch { left, right } => {
                write!(
                    f,
                    "operands live in different algebras (n = {left} vs n = {right})"
                )
            }
            Error::NotAUnit => f.write_str("element has augmentation 0 and is not a unit"),
            Error::ZeroHasNoDegree => f.write_str("the zero element has no filtration degree"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (must be < {bound})")
            }
            Error::UnsupportedInvolution { n } => {
                write!(f, "the circledast involution needs n >= 3 (got n = {n})")
            }
            Error::UnsupportedFamily { n } => {
                write!(f, "the semidihedral group needs n >= 3 (got n = {n})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotInSubgroup => f.write_str("element is not in the subgroup"),
            Error::EnumerationCap { n, max } => {
                write!(
                    f,
                    "exhaustive enumeration is capped at n = {max} (got n = {n})"
                )
            }
            Error::NoClosedForm => f.write_str("no closed-form order is known for this subgroup"),
            Error::Parse(e) => write!(f, "parse error: {e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
