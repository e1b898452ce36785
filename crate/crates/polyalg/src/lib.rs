//! Exact sparse multivariate polynomial arithmetic and graded monomial
//! indexing.
//!
//! This crate is the shared currency of the workspace: dynamics, guard sets,
//! costs, and test functions are all [`Polynomial`] values, and every moment
//! vector is indexed through a [`MonomialBasis`].
//!
//! # Conventions
//!
//! * Variables are identified by `usize` ids ([`VarId`]). A polynomial
//!   carries an explicit ordered *universe* of admissible variables;
//!   operations on mismatched universes are rejected with a diagnostic
//!   naming the offending variable.
//! * Monomials are kept in canonical sparse form (no explicit zero powers)
//!   and ordered *graded lexicographically*: lower total degree first, and
//!   within a degree, exponent vectors compare lexicographically in
//!   ascending variable order. Position 0 of every basis is the constant
//!   monomial.
//! * Coefficients are `f64`. Terms whose coefficient falls below
//!   [`COEFF_DROP_TOLERANCE`] in magnitude after a cancellation are removed,
//!   keeping the representation canonical.

mod basis;
mod monomial;
mod polynomial;

pub use basis::MonomialBasis;
pub use monomial::Monomial;
pub use polynomial::{sigmoid_taylor, Polynomial};

/// Coefficients with magnitude below this threshold are dropped after
/// arithmetic, keeping polynomials in canonical sparse form. The source data
/// (aerodynamic coefficients) carries at most seven significant digits, so
/// nothing meaningful lives below this level.
pub const COEFF_DROP_TOLERANCE: f64 = 1e-15;

/// Variable identifier; an index into a problem-level variable table.
pub type VarId = usize;

/// Errors raised by polynomial construction and manipulation.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    /// Two polynomials disagree on their variable universes.
    #[error("variable universe mismatch at variable {var}")]
    UniverseMismatch { var: VarId },
    /// A monomial references a variable outside the declared universe.
    #[error("variable {var} is outside the declared universe")]
    OutsideUniverse { var: VarId },
    /// An evaluation point omits a required variable.
    #[error("no value assigned for variable {var}")]
    MissingAssignment { var: VarId },
    /// A substitution omits a variable that the target universe lacks.
    #[error("substitution leaves variable {var} unmapped and outside the target universe")]
    UnmappedVariable { var: VarId },
    /// Sigmoid polynomialization supports odd degrees 1, 3, 5 only.
    #[error("unsupported sigmoid truncation degree {0} (expected 1, 3, or 5)")]
    UnsupportedSigmoidDegree(u32),
}

/// Binomial coefficient in `u128`-safe range, used for basis sizing.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
