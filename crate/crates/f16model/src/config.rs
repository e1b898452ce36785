//! Loop configuration: controller mode, guard split, command, horizon,
//! and the state layout shared by simulation and relaxation assembly.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::matrices::{
    default_command, HORIZON_SECONDS, LAMBDA_DEGRADED, LAMBDA_HEALTHY, PHI_MAX_DEGRADED,
    PHI_MAX_NOMINAL,
};
use crate::ModelError;

/// Which controller closes the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlMode {
    /// Baseline state feedback plus command feedforward only (4 states).
    Lqr,
    /// Baseline plus single-weight adaptive augmentation tracking a
    /// reference model (9 states: plant, weight, reference).
    Mrac,
}

/// Bank-angle guard preset or explicit split, parsed from user input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiMax {
    Nominal,
    Degraded,
    Radians(f64),
}

impl PhiMax {
    /// Parse `"nominal"`, `"degraded"`, or a radian value.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        match s {
            "nominal" => Ok(Self::Nominal),
            "degraded" => Ok(Self::Degraded),
            other => other
                .parse::<f64>()
                .map_err(|_| {
                    ModelError::BadConfig(format!(
                        "phi-max must be 'nominal', 'degraded', or radians, got '{other}'"
                    ))
                })
                .and_then(|v| {
                    if v > 0.0 {
                        Ok(Self::Radians(v))
                    } else {
                        Err(ModelError::BadConfig(format!(
                            "phi-max must be positive, got {v}"
                        )))
                    }
                }),
        }
    }

    pub fn radians(self) -> f64 {
        self.resolve(PHI_MAX_NOMINAL, PHI_MAX_DEGRADED)
    }

    /// Resolve the presets against explicit values (e.g. the ones carried
    /// by a problem file) instead of the built-in constants.
    pub fn resolve(self, nominal: f64, degraded: f64) -> f64 {
        match self {
            Self::Nominal => nominal,
            Self::Degraded => degraded,
            Self::Radians(v) => v,
        }
    }
}

/// Complete closed-loop configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopConfig {
    pub mode: ControlMode,
    /// Bank-angle magnitude at which actuation degrades, radians.
    pub phi_max: f64,
    /// Constant output command `(beta_cmd, phi_cmd)`, radians.
    pub command: Vector2<f64>,
    /// Mission horizon, seconds.
    pub horizon: f64,
    /// Degree of the odd-polynomial logistic approximation used by the
    /// adaptive channel; must be 1, 3, or 5.
    pub sigmoid_degree: u32,
    /// Control effectiveness in the healthy cell.
    pub lambda_healthy: f64,
    /// Control effectiveness in the degraded cell.
    pub lambda_degraded: f64,
}

impl LoopConfig {
    pub fn new(mode: ControlMode, phi_max: PhiMax) -> Self {
        Self {
            mode,
            phi_max: phi_max.radians(),
            command: default_command(),
            horizon: HORIZON_SECONDS,
            sigmoid_degree: 3,
            lambda_healthy: LAMBDA_HEALTHY,
            lambda_degraded: LAMBDA_DEGRADED,
        }
    }

    /// Number of simulated states: 4 for the baseline loop; 9 for the
    /// adaptive loop (plant, weight, reference model).
    pub fn state_dim(&self) -> usize {
        match self.mode {
            ControlMode::Lqr => 4,
            ControlMode::Mrac => 9,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.phi_max > 0.0) {
            return Err(ModelError::BadConfig("phi_max must be positive".into()));
        }
        if !(self.horizon > 0.0) {
            return Err(ModelError::BadConfig("horizon must be positive".into()));
        }
        if !matches!(self.sigmoid_degree, 1 | 3 | 5) {
            return Err(ModelError::BadConfig(format!(
                "sigmoid degree must be 1, 3, or 5, got {}",
                self.sigmoid_degree
            )));
        }
        Ok(())
    }
}

/// Full simulation state of the adaptive loop, as a typed view over the
/// flat layout `(beta, phi, p, r, W, beta_r, phi_r, p_r, r_r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullState {
    /// Plant states `(beta, phi, p, r)`.
    pub x_q: [f64; 4],
    /// Adaptive weight.
    pub w: f64,
    /// Reference-model states.
    pub x_r: [f64; 4],
}

impl FullState {
    pub fn to_array(self) -> [f64; 9] {
        let mut out = [0.0; 9];
        out[..4].copy_from_slice(&self.x_q);
        out[4] = self.w;
        out[5..].copy_from_slice(&self.x_r);
        out
    }

    pub fn from_slice(x: &[f64]) -> Result<Self, ModelError> {
        if x.len() != 9 {
            return Err(ModelError::BadConfig(format!(
                "full state needs 9 entries, got {}",
                x.len()
            )));
        }
        Ok(Self {
            x_q: [x[0], x[1], x[2], x[3]],
            w: x[4],
            x_r: [x[5], x[6], x[7], x[8]],
        })
    }
}
