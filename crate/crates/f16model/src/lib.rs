//! Flagship benchmark instance: the lateral-directional (dutch-roll)
//! dynamics of a fighter aircraft under a baseline state-feedback
//! regulator, optionally augmented by a single-weight adaptive element,
//! flying a constant bank command through a piecewise loss of actuator
//! effectiveness.
//!
//! The crate provides the same closed loop in three interchangeable
//! forms, and tests pin them against each other:
//!
//! * **native** — [`CompiledLoop::derivative`], a plain `f64` right-hand
//!   side for time-domain simulation and falsification sweeps;
//! * **polynomial** — [`closed_loop_field`] /
//!   [`mrac_cluster_split`], the identical dynamics as piecewise
//!   polynomial vector fields in physical coordinates;
//! * **normalized** — [`build_validation_problem`], the polynomial form
//!   rescaled onto unit boxes and unit horizon, packaged as the input
//!   consumed by the relaxation assembler.
//!
//! Everything numeric is derived from the published plant and feedback
//! gain in [`gains`]: the feedback sign convention is resolved by a
//! Hurwitz scan, the feedforward gain is recomputed to make the DC gain
//! exactly the identity, and the Lyapunov certificate behind the
//! adaptation law is solved and verified rather than hard-coded.

pub mod config;
pub mod fields;
pub mod gains;
pub mod matrices;
pub mod normalize;
pub mod problem;
pub mod uncertainty;

use thiserror::Error;

/// Errors produced while deriving gains, configuring the loop, or
/// lowering it into polynomial form.
#[derive(Debug, Error)]
pub enum ModelError {
    /// The published data does not yield a well-posed loop (no Hurwitz
    /// sign, singular DC gain, indefinite Lyapunov certificate, ...).
    #[error("gain derivation failed: {0}")]
    GainDerivation(String),
    /// A configuration or problem-file value is out of range.
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    /// Polynomial arithmetic failed while lowering the loop.
    #[error(transparent)]
    Poly(#[from] polyalg::PolyError),
    /// The assembled problem failed the IR validity checks.
    #[error(transparent)]
    Liouville(#[from] liouville::LiouvilleError),
    /// A problem file is not valid JSON for the schema.
    #[error("problem file parse error: {0}")]
    Json(#[from] serde_json::Error),
}

pub use config::{ControlMode, FullState, LoopConfig, PhiMax};
pub use fields::{closed_loop_field, mrac_cluster_split, CompiledLoop};
pub use gains::{hurwitz_sign, solve_lyapunov, GainSet};
pub use matrices::{
    angle_halfwidth, baseline_feedback_gain, default_command, initial_halfwidth,
    published_feedforward_gain, PlantMatrices, ADAPTATION_RATE, HORIZON_SECONDS,
    LAMBDA_DEGRADED, LAMBDA_HEALTHY, LYAPUNOV_Q_SCALE, PHI_MAX_DEGRADED, PHI_MAX_NOMINAL,
    WEIGHT_HALFWIDTH,
};
pub use normalize::{
    build_validation_problem, coupling_halfwidth, normalize_polynomial, normalize_system,
};
pub use problem::{ProblemSpec, SCHEMA_VERSION};
pub use uncertainty::{delta_eval, delta_polynomials};
