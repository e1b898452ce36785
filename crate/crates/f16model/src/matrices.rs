//! Plant and controller constants for the lateral-directional
//! (dutch-roll) benchmark: linearized rigid-body dynamics of a fighter
//! aircraft at a fixed trim point, with sideslip, bank angle, roll rate,
//! and yaw rate as states and aileron/rudder deflections as inputs.
//!
//! State order throughout the crate: `x_q = (beta, phi, p, r)` [rad,
//! rad, rad/s, rad/s]; input order `u = (delta_a, delta_r)` [rad].
//! Regulated outputs are `y = C x_q = (beta, phi)`.

use nalgebra::{Matrix2, Matrix2x4, Matrix4, Matrix4x2, Vector2, Vector4};

/// Linear plant `dx_q/dt = A x_q + B u`, outputs `y = C x_q`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantMatrices {
    pub a: Matrix4<f64>,
    pub b: Matrix4x2<f64>,
    pub c: Matrix2x4<f64>,
}

impl PlantMatrices {
    /// The dutch-roll benchmark plant.
    pub fn dutch_roll() -> Self {
        Self {
            a: Matrix4::new(
                -0.3220, 0.0640, 0.0364, -0.9917, //
                0.0, 0.0, 1.0, 0.0393, //
                -30.6490, 0.0, -3.6784, -0.6646, //
                8.3595, 0.0, -0.0254, -0.4764,
            ),
            b: Matrix4x2::new(
                0.0, 0.0, //
                0.0, 0.0, //
                -0.7331, 0.1315, //
                -0.0319, -0.0620,
            ),
            c: Matrix2x4::new(
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0,
            ),
        }
    }

    /// Input column used by the adaptive weight update (aileron channel).
    pub fn aileron_column(&self) -> Vector4<f64> {
        self.b.column(0).into_owned()
    }
}

/// State-feedback gain of the baseline regulator.
pub fn baseline_feedback_gain() -> Matrix2x4<f64> {
    Matrix2x4::new(
        10.6901, -9.5824, -2.0328, -6.1944, //
        -0.3982, -0.2043, -0.4170, -27.0142,
    )
}

/// Feedforward gain as published with the benchmark. It carries roughly
/// one percent of DC-gain error; the loop derives an exact replacement
/// (see [`GainSet::derive`](crate::GainSet::derive)) and keeps this value
/// only as data.
pub fn published_feedforward_gain() -> Matrix2<f64> {
    Matrix2::new(
        -2.9031, -9.9924, //
        156.5907, -2.4300,
    )
}

/// Adaptation rate of the weight update.
pub const ADAPTATION_RATE: f64 = 300.0;

/// The Lyapunov equation solved for the adaptation law is
/// `A_r^T P + P A_r = -QSCALE * I`.
pub const LYAPUNOV_Q_SCALE: f64 = 100.0;

/// Mission horizon in seconds.
pub const HORIZON_SECONDS: f64 = 10.0;

/// Half-width of the certified box for every angle state (plant and
/// reference), radians: 30 degrees.
pub fn angle_halfwidth() -> f64 {
    30.0 * std::f64::consts::PI / 180.0
}

/// Half-width of the certified box for the adaptive weight.
pub const WEIGHT_HALFWIDTH: f64 = 80.0;

/// Half-width of the initial box on each plant state, radians: 10 degrees.
pub fn initial_halfwidth() -> f64 {
    10.0 * std::f64::consts::PI / 180.0
}

/// Step command tracked by the loop: zero sideslip, ten degrees of bank.
pub fn default_command() -> Vector2<f64> {
    Vector2::new(0.0, 10.0 * std::f64::consts::PI / 180.0)
}

/// Bank-angle guard split (radians) in the healthy configuration: the
/// degraded cell exists structurally but its guard region sits outside
/// the certified box.
pub const PHI_MAX_NOMINAL: f64 = 1.0;

/// Bank-angle guard split (radians) in the degraded configuration: the
/// actuator loses authority once the bank angle exceeds ~18 degrees.
pub const PHI_MAX_DEGRADED: f64 = 0.314159;

/// Control effectiveness inside the healthy cell.
pub const LAMBDA_HEALTHY: f64 = 1.0;

/// Control effectiveness (feedback path and disturbance scaling) inside
/// the degraded cell.
pub const LAMBDA_DEGRADED: f64 = 0.2;
