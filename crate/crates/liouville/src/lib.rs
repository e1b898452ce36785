//! Moment-LMI relaxations of occupation-measure programs for
//! piecewise-polynomial dynamics.
//!
//! Given a closed-loop system described by polynomial vector fields on
//! semialgebraic guard cells, a semialgebraic initial set, and a polynomial
//! terminal cost, this crate assembles the finite-dimensional moment
//! relaxation whose optimum *upper-bounds* the worst-case terminal cost
//! over every admissible trajectory. The relaxation is a standard-form
//! semidefinite program: moment vectors per measure, equality rows from the
//! Liouville transport identity, and moment/localizing matrices enforcing
//! positivity on the declared supports.
//!
//! The crate is solver-agnostic: it produces a [`MomentRelaxation`] value
//! plus byte-stable JSON and SDPA exports; solving lives elsewhere.
//!
//! # Dense versus structured assembly
//!
//! Problems with an autonomous reference block can be assembled two ways:
//!
//! * **dense** — the reference is substituted into the plant and one joint
//!   cluster is relaxed; moment matrices have side `C(n_joint + d, d)`;
//! * **sparse** — plant and reference keep separate measure families,
//!   coupled through marginal rows on the exogenous variables; the largest
//!   moment matrix then scales with the *cluster* dimension, which is what
//!   makes higher orders reachable for the adaptive-loop problems this
//!   toolkit targets.
//!
//! Both paths agree in the infinite hierarchy; the test suite checks they
//! agree numerically on a decoupled toy at low order.

mod assembly;
mod export;
pub mod ir;
mod relaxation;

use thiserror::Error;

pub use assembly::{assemble_relaxation, merge_reference, Structure};
pub use export::{sha256_hex, to_json, to_sdpa};
pub use ir::{Cell, PiecewiseSystem, ReferenceBlock, SemialgebraicSet, ValidationProblem};
pub use relaxation::{LinearRow, MeasureDecl, MomentRelaxation, PsdBlock};

/// Errors from problem validation and relaxation assembly.
#[derive(Debug, Error)]
pub enum LiouvilleError {
    /// The problem description is inconsistent (dimensions, variable
    /// ranges, missing blocks) or incompatible with the requested assembly.
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// Polynomial manipulation failed; always indicates a malformed input
    /// polynomial (universe mismatches and the like).
    #[error("polynomial error: {0}")]
    Poly(#[from] polyalg::PolyError),

    /// An internal invariant was violated during assembly; indicates a bug,
    /// not a user error.
    #[error("internal assembly error: {0}")]
    Internal(String),
}
