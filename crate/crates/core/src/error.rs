use core::fmt;

use crate::Entry;

/// Why a square array failed to be a Coxeter matrix. Coordinates are
/// zero-based `(row, column)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    Empty,
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    Diagonal {
        index: usize,
        found: Entry,
    },
    OffDiagonalTooSmall {
        row: usize,
        col: usize,
        found: Entry,
    },
    Asymmetric {
        row: usize,
        col: usize,
        found: Entry,
        mirror: Entry,
    },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Empty => f.write_str("matrix has no rows"),
            MatrixError::NotSquare { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            MatrixError::Diagonal { index, found } => {
                write!(f, "diagonal entry ({index},{index}) is {found}, expected 1")
            }
            MatrixError::OffDiagonalTooSmall { row, col, found } => {
                write!(f, "off-diagonal entry ({row},{col}) is {found}, expected >= 2 or inf")
            }
            MatrixError::Asymmetric { row, col, found, mirror } => write!(
                f,
                "matrix is not symmetric: entry ({row},{col}) is {found} but ({col},{row}) is {mirror}"
            ),
        }
    }
}

/// Errors raised by the operations of this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Matrix(MatrixError),
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    /// An `m`-link was requested with `m < 2`.
    LinkBound(u64),
    /// `(c, d)` does not satisfy `c >= 1`, `d >= 2`, `gcd(c, d) = 1`.
    InvalidFamily {
        c: u64,
        d: u64,
    },
    NotInFamily {
        c: u64,
        d: u64,
        row: usize,
        col: usize,
        found: Entry,
    },
    NotEven {
        row: usize,
        col: usize,
        found: Entry,
    },
    NotRightAngled {
        row: usize,
        col: usize,
        found: Entry,
    },
    NotPrime(u64),
    PrimeDoesNotDivide {
        p: u64,
        d: u64,
    },
    InvalidParameter(&'static str),
    /// An exhaustive search refused to start because the input is too large.
    SearchGuard {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    ShapeMismatch {
        what: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    /// An element was used with an algebra or ring it does not belong to.
    ElementMismatch,
    /// A unit was expected but the constant term is not 1.
    NotUnit,
    /// A ring element was expected to lie in the augmentation ideal.
    NotInIdeal,
    UnverifiedWitness,
    Overflow,
    /// Entries that should be constant on a class (or between two classes)
    /// differ. This cannot happen for a valid Coxeter matrix and signals a
    /// bug in the class computation.
    InconsistentReduction {
        first: (usize, usize),
        second: (usize, usize),
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Matrix(e) => write!(f, "invalid Coxeter matrix: {e}"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len} generators")
            }
            Error::LinkBound(m) => write!(f, "m-link needs 2 <= m, got {m}"),
            Error::InvalidFamily { c, d } => {
                write!(f, "family ({c},{d}) needs c >= 1, d >= 2 and gcd(c,d) = 1")
            }
            Error::NotInFamily { c, d, row, col, found } => write!(
                f,
                "matrix is not in E({c},{d}): entry ({row},{col}) = {found} is not in {{{}, inf}} or 2*{d}^r",
                2 * c
            ),
            Error::NotEven { row, col, found } => {
                write!(f, "matrix is not even: entry ({row},{col}) = {found}")
            }
            Error::NotRightAngled { row, col, found } => {
                write!(f, "matrix is not right-angled: entry ({row},{col}) = {found}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::PrimeDoesNotDivide { p, d } => write!(f, "prime {p} does not divide {d}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::SearchGuard { what, value, limit } => {
                write!(f, "{what} = {value} exceeds the exhaustive search limit {limit}")
            }
            Error::ShapeMismatch { what, expected, found } => write!(
                f,
                "{what} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Error::ElementMismatch => f.write_str("element does not belong to this structure"),
            Error::NotUnit => f.write_str("element is not of the form 1 + w"),
            Error::NotInIdeal => f.write_str("element has a nonzero constant term"),
            Error::UnverifiedWitness => f.write_str("morphism witness does not verify"),
            Error::Overflow => f.write_str("integer overflow"),
            Error::InconsistentReduction { first, second } => write!(
                f,
                "internal error: entries ({},{}) and ({},{}) should agree on the reduced matrix",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

impl From<MatrixError> for Error {
    fn from(e: MatrixError) -> Self {
        Error::Matrix(e)
    }
}

impl core::error::Error for MatrixError {}

impl core::error::Error for Error {}
