//! Closed-loop vector fields, in two interchangeable forms:
//!
//! * [`CompiledLoop`] — straight floating-point evaluation for
//!   simulation (hot path of the Monte-Carlo sweep);
//! * [`closed_loop_field`] / [`mrac_cluster_split`] — the same dynamics
//!   as piecewise *polynomials*, consumed by relaxation assembly.
//!
//! A test pins the two forms together pointwise; they must agree to
//! roundoff or any certificate computed from the polynomials says
//! nothing about the simulated loop.
//!
//! # Loop structure
//!
//! The control applied to the plant is
//!
//! ```text
//!   u = lambda * (u_fb + u_ad) + u_ff            + lambda * Delta(x_q, u_n)  [degraded cell only]
//!   u_fb = -Kx x_q,  u_ff = Kr c,  u_n = u_fb + u_ff,
//!   u_ad = (-W * sigma(phi), 0)                  [adaptive mode only]
//! ```
//!
//! with `lambda = 1` while `|phi| <= phi_max` (healthy cell) and
//! `lambda = 0.2` beyond (degraded cell). Loss of effectiveness scales
//! the feedback path and the matched disturbance; the command
//! feedforward keeps full authority, and the disturbance argument is the
//! nominal control `u_n` (the disturbance models airframe/actuator
//! couplings of the baseline command path, not of the adaptive channel).
//!
//! In adaptive mode the weight follows
//!
//! ```text
//!   dW/dt = Gamma * sigma(phi) * e~^T P B_ail,
//!   e~ = (beta - beta_ss, phi - phi_r, p - p_r, r - r_ss),
//! ```
//!
//! the *approximated* tracking error that freezes the fast reference
//! transients at their steady values: both the simulator and the
//! relaxation use this same law, which is what makes simulated
//! trajectories exactly feasible for the assembled transport rows. The
//! reference model `dx_r/dt = A_r x_r + B_r c` runs open-loop from rest.

use liouville::{Cell, PiecewiseSystem, ReferenceBlock, SemialgebraicSet};
use nalgebra::{Vector2, Vector4};
use polyalg::{sigmoid_taylor, Polynomial};

use crate::config::{ControlMode, LoopConfig};
use crate::gains::GainSet;
use crate::matrices::{angle_halfwidth, PlantMatrices};
use crate::uncertainty::{delta_eval, delta_polynomials};
use crate::ModelError;

/// Evaluate the odd-polynomial logistic approximation
/// `1/2 - x/4 [+ x^3/48 [- x^5/480]]` of the given degree.
pub fn sigmoid_eval(x: f64, degree: u32) -> Result<f64, ModelError> {
    let x2 = x * x;
    match degree {
        1 => Ok(0.5 - x / 4.0),
        3 => Ok(0.5 - x / 4.0 + x * x2 / 48.0),
        5 => Ok(0.5 - x / 4.0 + x * x2 / 48.0 - x * x2 * x2 / 480.0),
        d => Err(ModelError::BadConfig(format!(
            "sigmoid degree must be 1, 3, or 5, got {d}"
        ))),
    }
}

/// Natively evaluated closed loop for simulation.
#[derive(Debug, Clone)]
pub struct CompiledLoop {
    plant: PlantMatrices,
    gains: GainSet,
    cfg: LoopConfig,
    /// Steady reference `x_ss` for the configured command.
    x_ss: Vector4<f64>,
    /// Precomputed feedforward `Kr c`.
    ff: Vector2<f64>,
    /// Precomputed reference drive `B_r c`.
    brc: Vector4<f64>,
}

impl CompiledLoop {
    pub fn new(
        plant: PlantMatrices,
        gains: GainSet,
        cfg: LoopConfig,
    ) -> Result<Self, ModelError> {
        cfg.validate()?;
        sigmoid_eval(0.0, cfg.sigmoid_degree)?;
        let x_ss = gains.steady_reference(&cfg.command)?;
        let ff = gains.kr * cfg.command;
        let brc = gains.b_r * cfg.command;
        Ok(Self {
            plant,
            gains,
            cfg,
            x_ss,
            ff,
            brc,
        })
    }

    pub fn config(&self) -> &LoopConfig {
        &self.cfg
    }

    pub fn gains(&self) -> &GainSet {
        &self.gains
    }

    pub fn steady_state(&self) -> &Vector4<f64> {
        &self.x_ss
    }

    /// Simulated state dimension (4 baseline, 9 adaptive).
    pub fn dim(&self) -> usize {
        self.cfg.state_dim()
    }

    /// 0 for the healthy cell (`|phi| <= phi_max`), 1 for the degraded one.
    pub fn cell_index(&self, x: &[f64]) -> usize {
        usize::from(x[1].abs() > self.cfg.phi_max)
    }

    fn sigma(&self, phi: f64) -> f64 {
        let x2 = phi * phi;
        match self.cfg.sigmoid_degree {
            1 => 0.5 - phi / 4.0,
            3 => 0.5 - phi / 4.0 + phi * x2 / 48.0,
            _ => 0.5 - phi / 4.0 + phi * x2 / 48.0 - phi * x2 * x2 / 480.0,
        }
    }

    /// Time derivative of the full state. `x` and `out` must have length
    /// [`dim`](Self::dim).
    pub fn derivative(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        let kx = &self.gains.kx;
        let a = &self.plant.a;
        let b = &self.plant.b;
        let phi = x[1];

        // Feedback, feedforward, and the nominal control (disturbance arg).
        let mut fb = [0.0f64; 2];
        for (k, fbk) in fb.iter_mut().enumerate() {
            *fbk = -(kx[(k, 0)] * x[0] + kx[(k, 1)] * x[1] + kx[(k, 2)] * x[2] + kx[(k, 3)] * x[3]);
        }
        let un = [fb[0] + self.ff[0], fb[1] + self.ff[1]];

        let mrac = self.cfg.mode == ControlMode::Mrac;
        let sig = if mrac { self.sigma(phi) } else { 0.0 };
        if mrac {
            fb[0] += -x[4] * sig;
        }

        let degraded = phi.abs() > self.cfg.phi_max;
        let lam = if degraded {
            self.cfg.lambda_degraded
        } else {
            self.cfg.lambda_healthy
        };
        let mut u = [lam * fb[0] + self.ff[0], lam * fb[1] + self.ff[1]];
        if degraded {
            let d = delta_eval(&[x[0], x[1], x[2], x[3]], &un);
            u[0] += self.cfg.lambda_degraded * d[0];
            u[1] += self.cfg.lambda_degraded * d[1];
        }

        for i in 0..4 {
            out[i] = a[(i, 0)] * x[0]
                + a[(i, 1)] * x[1]
                + a[(i, 2)] * x[2]
                + a[(i, 3)] * x[3]
                + b[(i, 0)] * u[0]
                + b[(i, 1)] * u[1];
        }
        if !mrac {
            return;
        }

        // Weight update with the approximated tracking error.
        let pb = &self.gains.pb;
        let e_pb = pb[0] * (x[0] - self.x_ss[0])
            + pb[1] * (x[1] - x[6])
            + pb[2] * (x[2] - x[7])
            + pb[3] * (x[3] - self.x_ss[3]);
        out[4] = self.gains.gamma * sig * e_pb;

        // Reference model.
        let ar = &self.gains.a_r;
        for i in 0..4 {
            out[5 + i] = ar[(i, 0)] * x[5]
                + ar[(i, 1)] * x[6]
                + ar[(i, 2)] * x[7]
                + ar[(i, 3)] * x[8]
                + self.brc[i];
        }
    }

    /// Instantaneous tracking cost `||c - C x_q||^2` (physical units).
    pub fn tracking_cost(&self, x: &[f64]) -> f64 {
        let dy0 = self.cfg.command[0] - x[0];
        let dy1 = self.cfg.command[1] - x[1];
        dy0 * dy0 + dy1 * dy1
    }

    /// Whether the state sits inside the certified box (all angle states
    /// within the angle half-width; the weight within its half-width).
    pub fn in_certified_box(&self, x: &[f64]) -> bool {
        let a = angle_halfwidth();
        let angles_ok = |xs: &[f64]| xs.iter().all(|v| v.abs() <= a);
        match self.cfg.mode {
            ControlMode::Lqr => angles_ok(&x[..4]),
            ControlMode::Mrac => {
                angles_ok(&x[..4])
                    && x[4].abs() <= crate::matrices::WEIGHT_HALFWIDTH
                    && angles_ok(&x[5..9])
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomial form
// ---------------------------------------------------------------------------

struct ControlPolys {
    /// Feedback-plus-adaptive part (the path scaled by effectiveness).
    fbt: [Polynomial; 2],
    /// Constant feedforward.
    ff: [f64; 2],
    /// Disturbance with the nominal control substituted in.
    delta: [Polynomial; 2],
}

/// Shared construction of the control-channel polynomials over a
/// `nvars`-variable universe whose first four variables are the plant
/// states (and, in adaptive mode, whose fifth is the weight).
fn control_polys(
    gains: &GainSet,
    cfg: &LoopConfig,
    nvars: usize,
) -> Result<ControlPolys, ModelError> {
    let ff = gains.kr * cfg.command;
    let mut fb = Vec::with_capacity(2);
    for k in 0..2 {
        let mut p = Polynomial::zero((0..nvars).collect());
        for j in 0..4 {
            p = p.add(&Polynomial::var_in(j, nvars).scale(-gains.kx[(k, j)]))?;
        }
        fb.push(p);
    }
    let un = [
        fb[0].add(&Polynomial::constant_in(ff[0], nvars))?,
        fb[1].add(&Polynomial::constant_in(ff[1], nvars))?,
    ];

    let mut fbt = [fb[0].clone(), fb[1].clone()];
    if cfg.mode == ControlMode::Mrac {
        let sigma = sigmoid_taylor(cfg.sigmoid_degree, 1, (0..nvars).collect())?;
        let w = Polynomial::var_in(4, nvars);
        fbt[0] = fbt[0].add(&w.mul(&sigma)?.scale(-1.0))?;
    }

    // Disturbance over (states, controls), then controls := nominal u_n.
    let raw = delta_polynomials([0, 1, 2, 3], [nvars, nvars + 1], nvars + 2)?;
    let mut map = std::collections::BTreeMap::new();
    map.insert(nvars, un[0].clone());
    map.insert(nvars + 1, un[1].clone());
    let delta = [
        raw[0].substitute(&map, (0..nvars).collect())?,
        raw[1].substitute(&map, (0..nvars).collect())?,
    ];
    Ok(ControlPolys {
        fbt,
        ff: [ff[0], ff[1]],
        delta,
    })
}

/// Plant-state rows `A x_q + B u` for one cell's effective control.
fn plant_rows(
    plant: &PlantMatrices,
    cp: &ControlPolys,
    lambda: f64,
    with_delta: bool,
    delta_scale: f64,
    nvars: usize,
) -> Result<Vec<Polynomial>, ModelError> {
    let mut u = Vec::with_capacity(2);
    for k in 0..2 {
        let mut p = cp.fbt[k]
            .scale(lambda)
            .add(&Polynomial::constant_in(cp.ff[k], nvars))?;
        if with_delta {
            p = p.add(&cp.delta[k].scale(delta_scale))?;
        }
        u.push(p);
    }
    let mut rows = Vec::with_capacity(4);
    for i in 0..4 {
        let mut p = Polynomial::zero((0..nvars).collect());
        for j in 0..4 {
            p = p.add(&Polynomial::var_in(j, nvars).scale(plant.a[(i, j)]))?;
        }
        for (k, uk) in u.iter().enumerate() {
            p = p.add(&uk.scale(plant.b[(i, k)]))?;
        }
        rows.push(p);
    }
    Ok(rows)
}

fn guards(phi_max: f64, nvars: usize) -> (Vec<Polynomial>, Vec<Polynomial>) {
    let phi = Polynomial::var_in(1, nvars);
    let phi2 = phi.mul(&phi).expect("same universe");
    let split = Polynomial::constant_in(phi_max * phi_max, nvars);
    let healthy = split.sub(&phi2).expect("same universe");
    let degraded = phi2.sub(&split).expect("same universe");
    (vec![healthy], vec![degraded])
}

/// Weight-update row `Gamma * sigma(phi) * inner`, where `inner` is the
/// error projection supplied by the caller.
fn weight_row(
    gains: &GainSet,
    cfg: &LoopConfig,
    inner: &Polynomial,
    nvars: usize,
) -> Result<Polynomial, ModelError> {
    let sigma = sigmoid_taylor(cfg.sigmoid_degree, 1, (0..nvars).collect())?;
    Ok(sigma.mul(inner)?.scale(gains.gamma))
}

/// The full closed loop as a piecewise-polynomial system in *physical*
/// units: 4 states in baseline mode; 9 states `(x_q, W, x_r)` in
/// adaptive mode.
pub fn closed_loop_field(
    plant: &PlantMatrices,
    gains: &GainSet,
    cfg: &LoopConfig,
) -> Result<PiecewiseSystem, ModelError> {
    cfg.validate()?;
    let n = cfg.state_dim();
    let cp = control_polys(gains, cfg, n)?;
    let (g1, g2) = guards(cfg.phi_max, n);

    let mut healthy = plant_rows(plant, &cp, cfg.lambda_healthy, false, 0.0, n)?;
    let mut degraded = plant_rows(
        plant,
        &cp,
        cfg.lambda_degraded,
        true,
        cfg.lambda_degraded,
        n,
    )?;

    if cfg.mode == ControlMode::Mrac {
        let x_ss = gains.steady_reference(&cfg.command)?;
        let pb = &gains.pb;
        // e~^T P B_ail over (x_q, W, x_r): plant terms minus reference
        // roll-channel terms minus the frozen steady offsets.
        let mut inner = Polynomial::constant_in(-pb[0] * x_ss[0] - pb[3] * x_ss[3], n);
        for (j, coef) in [(0usize, pb[0]), (1, pb[1]), (2, pb[2]), (3, pb[3])] {
            inner = inner.add(&Polynomial::var_in(j, n).scale(coef))?;
        }
        inner = inner.add(&Polynomial::var_in(6, n).scale(-pb[1]))?;
        inner = inner.add(&Polynomial::var_in(7, n).scale(-pb[2]))?;
        let dw = weight_row(gains, cfg, &inner, n)?;

        let brc = gains.b_r * cfg.command;
        let mut ref_rows = Vec::with_capacity(4);
        for i in 0..4 {
            let mut p = Polynomial::constant_in(brc[i], n);
            for j in 0..4 {
                p = p.add(&Polynomial::var_in(5 + j, n).scale(gains.a_r[(i, j)]))?;
            }
            ref_rows.push(p);
        }
        healthy.push(dw.clone());
        healthy.extend(ref_rows.iter().cloned());
        degraded.push(dw);
        degraded.extend(ref_rows);
    }

    Ok(PiecewiseSystem {
        nvars: n,
        dynamic_vars: n,
        cells: vec![
            Cell {
                name: "healthy".into(),
                guard: g1,
                field: healthy,
            },
            Cell {
                name: "degraded".into(),
                guard: g2,
                field: degraded,
            },
        ],
    })
}

/// The adaptive loop split for structured relaxation, in physical units:
/// a 6-variable plant cluster `(beta, phi, p, r, W, xi)` whose last
/// variable is the *exogenous* reference feed
///
/// ```text
///   xi = PB_phi * phi_r + PB_p * p_r,
/// ```
///
/// plus the autonomous reference block that produces it. The two
/// reference channels enter the weight update only through this one
/// linear functional, so a single exogenous variable carries all the
/// coupling — one cluster variable instead of two, which is what keeps
/// the order-3 moment matrices solvable.
pub fn mrac_cluster_split(
    plant: &PlantMatrices,
    gains: &GainSet,
    cfg: &LoopConfig,
) -> Result<(PiecewiseSystem, ReferenceBlock), ModelError> {
    cfg.validate()?;
    if cfg.mode != ControlMode::Mrac {
        return Err(ModelError::BadConfig(
            "cluster split is only defined for the adaptive loop".into(),
        ));
    }
    let n = 6usize;
    let cp = control_polys(gains, cfg, n)?;
    let (g1, g2) = guards(cfg.phi_max, n);

    let mut healthy = plant_rows(plant, &cp, cfg.lambda_healthy, false, 0.0, n)?;
    let mut degraded = plant_rows(
        plant,
        &cp,
        cfg.lambda_degraded,
        true,
        cfg.lambda_degraded,
        n,
    )?;

    let x_ss = gains.steady_reference(&cfg.command)?;
    let pb = &gains.pb;
    let mut inner = Polynomial::constant_in(-pb[0] * x_ss[0] - pb[3] * x_ss[3], n);
    for (j, coef) in [(0usize, pb[0]), (1, pb[1]), (2, pb[2]), (3, pb[3])] {
        inner = inner.add(&Polynomial::var_in(j, n).scale(coef))?;
    }
    inner = inner.add(&Polynomial::var_in(5, n).scale(-1.0))?;
    let dw = weight_row(gains, cfg, &inner, n)?;
    healthy.push(dw.clone());
    degraded.push(dw);

    let cluster = PiecewiseSystem {
        nvars: n,
        dynamic_vars: 5,
        cells: vec![
            Cell {
                name: "healthy".into(),
                guard: g1,
                field: healthy,
            },
            Cell {
                name: "degraded".into(),
                guard: g2,
                field: degraded,
            },
        ],
    };

    let brc = gains.b_r * cfg.command;
    let mut ref_field = Vec::with_capacity(4);
    for i in 0..4 {
        let mut p = Polynomial::constant_in(brc[i], 4);
        for j in 0..4 {
            p = p.add(&Polynomial::var_in(j, 4).scale(gains.a_r[(i, j)]))?;
        }
        ref_field.push(p);
    }
    let coupled = Polynomial::var_in(1, 4)
        .scale(pb[1])
        .add(&Polynomial::var_in(2, 4).scale(pb[2]))?;
    let a = angle_halfwidth();
    let reference = ReferenceBlock {
        nvars: 4,
        var_names: vec![
            "beta_r".into(),
            "phi_r".into(),
            "p_r".into(),
            "r_r".into(),
        ],
        field: ref_field,
        x_box: SemialgebraicSet::centered_box(&[(0, a), (1, a), (2, a), (3, a)], 4),
        initial_point: vec![0.0; 4],
        coupled_outputs: vec![coupled],
    };
    Ok((cluster, reference))
}
