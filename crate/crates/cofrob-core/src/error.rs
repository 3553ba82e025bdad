use alloc::string::String;
use core::fmt;

/// Errors raised by constructors and transforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Two basis elements share a label.
    DuplicateLabel(String),
    /// A label does not belong to the module it was looked up in.
    UnknownLabel(String),
    /// Source/target shapes or arities do not fit together.
    Shape(String),
    /// An entry violates degree homogeneity.
    Degree(String),
    /// A pairing or copairing fails to be invertible.
    NotPerfect(String),
    /// A structure failed a relation it was required to satisfy.
    Relation(String),
    /// Malformed or unsupported input.
    Input(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateLabel(l) => write!(f, "duplicate label '{}'", l),
            Error::UnknownLabel(l) => write!(f, "unknown label '{}'", l),
            Error::Shape(m) => write!(f, "shape mismatch: {}", m),
            Error::Degree(m) => write!(f, "degree error: {}", m),
            Error::NotPerfect(m) => write!(f, "not perfect: {}", m),
            Error::Relation(m) => write!(f, "relation failed: {}", m),
            Error::Input(m) => write!(f, "{}", m),
        }
    }
}

impl core::error::Error for Error {}
