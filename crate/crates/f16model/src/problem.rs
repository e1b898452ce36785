//! Problem-file schema and loader.
//!
//! A problem file is the complete, human-readable record of one
//! benchmark instance: the linear plant, the published gains, the
//! command, the guard presets, and the Monte-Carlo / certification
//! settings used to reproduce every number the toolkit emits. Nothing in
//! it is re-derived silently — the loader validates structure and ranges
//! and hands typed values to the same constructors the tests use.
//!
//! Constants that are part of the controller architecture rather than
//! the instance data (adaptation rate, Lyapunov scaling, certified box
//! geometry) are deliberately *not* in the schema; they live next to the
//! plant constants in this crate and are documented there.

use std::path::Path;

use nalgebra::{Matrix2, Matrix2x4, Matrix4, Matrix4x2, Vector2};
use serde::{Deserialize, Serialize};

use crate::config::{ControlMode, LoopConfig, PhiMax};
use crate::gains::GainSet;
use crate::matrices::PlantMatrices;
use crate::ModelError;

/// Schema revision accepted by this build.
pub const SCHEMA_VERSION: u32 = 1;

/// Row-major plant matrices as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlantArrays {
    /// System matrix, 4x4 row-major.
    pub a: [[f64; 4]; 4],
    /// Input matrix, 4x2 row-major (aileron, rudder).
    pub b: [[f64; 2]; 4],
    /// Output matrix, 2x4 row-major (sideslip, bank).
    pub c: [[f64; 4]; 2],
}

/// Guard-split presets selectable by name on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiPresets {
    pub nominal: f64,
    pub degraded: f64,
}

/// Control-effectiveness factor per guard cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffectivenessPresets {
    pub healthy: f64,
    pub degraded: f64,
}

/// Falsification sweep settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloSettings {
    /// Points per axis of the initial-state grid `(beta, phi, p, r)`.
    pub grid: [usize; 4],
    /// Integrator step, seconds.
    pub dt: f64,
    /// `"euler"` or `"rk4"`.
    pub method: String,
}

/// Verdict settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificationSettings {
    /// Certification threshold on the worst-case terminal cost bound,
    /// normalized output units.
    pub threshold: f64,
}

/// One benchmark instance, as serialized in `problems/*.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema_version: u32,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub plant: PlantArrays,
    /// Published state-feedback gain, 2x4 row-major.
    pub feedback_gain: [[f64; 4]; 2],
    /// Published feedforward gain, 2x2 row-major (data only; the loop
    /// uses its DC-exact re-derivation).
    pub published_feedforward_gain: [[f64; 2]; 2],
    /// Constant output command `(beta_cmd, phi_cmd)`, radians.
    pub command_rad: [f64; 2],
    pub horizon_seconds: f64,
    /// Degree of the odd-polynomial logistic approximation (1, 3, or 5).
    pub sigmoid_degree: u32,
    pub phi_max_rad: PhiPresets,
    pub control_effectiveness: EffectivenessPresets,
    pub monte_carlo: MonteCarloSettings,
    pub certification: CertificationSettings,
}

impl ProblemSpec {
    /// Parse a problem file from JSON text and validate it.
    pub fn from_json_str(text: &str) -> Result<Self, ModelError> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Load and validate a problem file.
    pub fn load(path: &Path) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            ModelError::BadConfig(format!("cannot read problem file {}: {e}", path.display()))
        })?;
        Self::from_json_str(&text)
    }

    /// Structural and range checks. Anything model-specific (Hurwitz
    /// signs, DC-gain conditioning) is checked later by
    /// [`GainSet::derive`]; this only rejects files that cannot describe
    /// a well-posed instance.
    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: String| Err(ModelError::BadConfig(msg));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!(
                "unsupported schema_version {} (this build reads {SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.name.is_empty() {
            return bad("problem name must be non-empty".into());
        }
        let all_entries = self
            .plant
            .a
            .iter()
            .flatten()
            .chain(self.plant.b.iter().flatten())
            .chain(self.plant.c.iter().flatten())
            .chain(self.feedback_gain.iter().flatten())
            .chain(self.published_feedforward_gain.iter().flatten())
            .chain(self.command_rad.iter());
        for &v in all_entries {
            if !v.is_finite() {
                return bad("matrix and command entries must be finite".into());
            }
        }
        if !(self.horizon_seconds > 0.0 && self.horizon_seconds.is_finite()) {
            return bad(format!(
                "horizon_seconds must be positive, got {}",
                self.horizon_seconds
            ));
        }
        if !matches!(self.sigmoid_degree, 1 | 3 | 5) {
            return bad(format!(
                "sigmoid_degree must be 1, 3, or 5, got {}",
                self.sigmoid_degree
            ));
        }
        for (label, v) in [
            ("phi_max_rad.nominal", self.phi_max_rad.nominal),
            ("phi_max_rad.degraded", self.phi_max_rad.degraded),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{label} must be positive, got {v}"));
            }
        }
        for (label, v) in [
            ("control_effectiveness.healthy", self.control_effectiveness.healthy),
            ("control_effectiveness.degraded", self.control_effectiveness.degraded),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return bad(format!("{label} must lie in (0, 1], got {v}"));
            }
        }
        if self.monte_carlo.grid.iter().any(|&n| n < 2) {
            return bad(format!(
                "monte_carlo.grid needs at least 2 points per axis, got {:?}",
                self.monte_carlo.grid
            ));
        }
        if !(self.monte_carlo.dt > 0.0 && self.monte_carlo.dt <= 0.1) {
            return bad(format!(
                "monte_carlo.dt must lie in (0, 0.1], got {}",
                self.monte_carlo.dt
            ));
        }
        if !matches!(self.monte_carlo.method.as_str(), "euler" | "rk4") {
            return bad(format!(
                "monte_carlo.method must be 'euler' or 'rk4', got '{}'",
                self.monte_carlo.method
            ));
        }
        if !(self.certification.threshold > 0.0 && self.certification.threshold.is_finite()) {
            return bad(format!(
                "certification.threshold must be positive, got {}",
                self.certification.threshold
            ));
        }
        Ok(())
    }

    pub fn plant_matrices(&self) -> PlantMatrices {
        PlantMatrices {
            a: Matrix4::from_fn(|i, j| self.plant.a[i][j]),
            b: Matrix4x2::from_fn(|i, j| self.plant.b[i][j]),
            c: Matrix2x4::from_fn(|i, j| self.plant.c[i][j]),
        }
    }

    pub fn feedback_gain_matrix(&self) -> Matrix2x4<f64> {
        Matrix2x4::from_fn(|i, j| self.feedback_gain[i][j])
    }

    pub fn published_feedforward_matrix(&self) -> Matrix2<f64> {
        Matrix2::from_fn(|i, j| self.published_feedforward_gain[i][j])
    }

    /// Derive the calibrated gain set for this instance.
    pub fn gain_set(&self) -> Result<GainSet, ModelError> {
        GainSet::derive(
            &self.plant_matrices(),
            self.feedback_gain_matrix(),
            self.published_feedforward_matrix(),
        )
    }

    /// Build a loop configuration from the file's defaults, with the
    /// guard preset resolved against the file's values.
    pub fn loop_config(&self, mode: ControlMode, phi_max: PhiMax) -> LoopConfig {
        LoopConfig {
            mode,
            phi_max: phi_max.resolve(self.phi_max_rad.nominal, self.phi_max_rad.degraded),
            command: Vector2::new(self.command_rad[0], self.command_rad[1]),
            horizon: self.horizon_seconds,
            sigmoid_degree: self.sigmoid_degree,
            lambda_healthy: self.control_effectiveness.healthy,
            lambda_degraded: self.control_effectiveness.degraded,
        }
    }
}
