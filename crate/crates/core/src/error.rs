//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Errors reported by the library.
///
/// Operations that enumerate all `2^n` cells of an ideal are protected by an
/// enumeration guard ([`crate::matching::Guard`]); exceeding it is an error,
/// not a panic, so callers can re-run with an explicit override.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two monomials with different ambient variable counts were combined.
    LengthMismatch { expected: usize, found: usize },
    /// A generator index outside `1..=n` (or variable index outside `1..=N`).
    IndexOutOfRange { index: usize, limit: usize },
    /// Cell members must be given strictly increasing.
    UnsortedMembers,
    /// The constant monomial `1` is not accepted as a generator.
    ConstantGenerator,
    /// Exact division of monomials failed.
    IndivisibleMonomial,
    /// The ideal has more generators than the enumeration guard allows.
    GuardExceeded { generators: usize, guard: usize },
    /// Hard cap: cells are bitmask-backed, so at most 64 generators.
    TooManyGenerators { generators: usize },
    /// A ranking passed to [`crate::order::TotalOrder`] is not a permutation.
    InvalidOrder(String),
    /// The field characteristic is neither 0 nor a prime.
    NotAPrime(u64),
    /// A matching failed verification where a verified one is required.
    InvalidMatching(String),
    /// A directed cycle was found where the matched graph must be acyclic.
    CycleDetected,
    /// The operation requires a cell of larger cardinality.
    CardinalityTooSmall { needed: usize, found: usize },
    /// Betti numbers can only be read off a minimal resolution.
    NonMinimalResolution { degree: usize, row: usize, col: usize },
    /// A ∂∘∂ ≠ 0 defect where a genuine complex is required.
    ComposeFailed { degree: usize, row: usize, col: usize },
    /// A family descriptor or family-specific operation was misused.
    InvalidFamily(String),
    /// A labeled complex violates its structural invariants.
    InvalidComplex(String),
    /// An internal invariant was violated; indicates a bug.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, found } => {
                write!(f, "monomial length mismatch: expected {expected} exponents, found {found}")
            }
            Error::IndexOutOfRange { index, limit } => {
                write!(f, "index {index} out of range 1..={limit}")
            }
            Error::UnsortedMembers => write!(f, "cell members must be strictly increasing"),
            Error::ConstantGenerator => {
                write!(f, "the constant monomial 1 is not a valid generator")
            }
            Error::IndivisibleMonomial => write!(f, "monomial division is not exact"),
            Error::GuardExceeded { generators, guard } => write!(
                f,
                "ideal has {generators} generators, above the enumeration guard {guard}; \
                 raise the guard to enumerate 2^{generators} cells"
            ),
            Error::TooManyGenerators { generators } => {
                write!(f, "ideal has {generators} generators; the hard cap is 64")
            }
            Error::InvalidOrder(msg) => write!(f, "invalid total order: {msg}"),
            Error::NotAPrime(p) => write!(f, "characteristic {p} is neither 0 nor a prime"),
            Error::InvalidMatching(msg) => write!(f, "matching failed verification: {msg}"),
            Error::CycleDetected => write!(f, "directed cycle in a graph required to be acyclic"),
            Error::CardinalityTooSmall { needed, found } => {
                write!(f, "cell cardinality {found} is below the required {needed}")
            }
            Error::NonMinimalResolution { degree, row, col } => write!(
                f,
                "resolution is not minimal: unit entry in differential {degree} at ({row}, {col})"
            ),
            Error::ComposeFailed { degree, row, col } => write!(
                f,
                "composition of differentials {degree} and {} is nonzero at ({row}, {col})",
                degree - 1
            ),
            Error::InvalidFamily(msg) => write!(f, "invalid family: {msg}"),
            Error::InvalidComplex(msg) => write!(f, "invalid labeled complex: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
