//! Error type shared by the whole crate.

use alloc::string::String;
use core::fmt;

/// Errors raised by operators, solvers and oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must share dimensions do not.
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },
    /// An operator declared symmetric positive definite is not symmetric.
    NotSymmetric { max_asymmetry: f64 },
    /// An operator declared symmetric positive definite has a non-positive
    /// eigenvalue.
    NotPositiveDefinite { min_eigenvalue: f64 },
    /// A configuration value is outside its admissible range.
    InvalidConfig(&'static str),
    /// A dense linear system factorization hit a (numerically) zero pivot.
    SingularSystem { context: &'static str },
    /// The alternating fixed point produced an all-zero iterate and the
    /// linear systems it defines are singular.
    DegenerateIterate,
    /// The Galerkin Gram matrix is numerically singular.
    SingularGalerkin { condition_estimate: f64 },
    /// `G S = 0` occurred during the power recursion.
    PowerBreakdown,
    /// Greedy singular value extraction stopped making progress; the partial
    /// decomposition is carried so callers can keep it.
    SvdStalled { partial: alloc::vec::Vec<crate::svd::SvdTriplet> },
    /// A dense materialization would exceed the desk-scale caps
    /// (order <= 4, at most 1e7 entries).
    DenseTooLarge { entries: usize },
    /// The oracle requires distinct eigenvalues and the input has a
    /// (numerically) repeated pair.
    EigenvaluesNotDistinct { gap: f64 },
    /// The hypothesis of the recurrence lemma fails at the given index
    /// (distinct from the conclusion failing, which is a `false` return).
    RecurrenceHypothesisViolated { index: usize, detail: String },
    /// Generic input validation failure with context.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                context,
                expected,
                got,
            } => write!(f, "dimension mismatch in {context}: expected {expected}, got {got}"),
            Error::NotSymmetric { max_asymmetry } => write!(
                f,
                "matrix declared symmetric has relative asymmetry {max_asymmetry:.3e}"
            ),
            Error::NotPositiveDefinite { min_eigenvalue } => write!(
                f,
                "matrix declared positive definite has smallest eigenvalue {min_eigenvalue:.6e}"
            ),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::SingularSystem { context } => {
                write!(f, "singular linear system in {context}")
            }
            Error::DegenerateIterate => {
                write!(f, "fixed-point iterate degenerated to zero factors")
            }
            Error::SingularGalerkin { condition_estimate } => write!(
                f,
                "Galerkin system numerically singular (condition estimate {condition_estimate:.3e})"
            ),
            Error::PowerBreakdown => write!(f, "power recursion breakdown: G S = 0"),
            Error::SvdStalled { partial } => write!(
                f,
                "greedy SVD stalled after extracting {} terms",
                partial.len()
            ),
            Error::DenseTooLarge { entries } => write!(
                f,
                "dense materialization of {entries} entries exceeds the desk-scale cap"
            ),
            Error::EigenvaluesNotDistinct { gap } => {
                write!(f, "eigenvalues not distinct (smallest gap {gap:.3e})")
            }
            Error::RecurrenceHypothesisViolated { index, detail } => {
                write!(f, "recurrence hypothesis fails at index {index}: {detail}")
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
