//! Matched actuator/aerodynamic uncertainty active in the degraded cell.
//!
//! The disturbance enters through the input channels as
//!
//! ```text
//!   Delta_1(x, u) = (1 - 4.2646 b^2) * CA * da + 0.0750 * pa(p) * rf(r)
//!   Delta_2(x, u) = (1 - 4.2646 b^2) * CR * dr + 0.4500 * pa(p) * rf(r)
//! ```
//!
//! with `pa(p) = -0.125 + 0.07854 p - 0.0013708 p^2`, `rf(r) = 1 +
//! 0.05236 r`, and channel constants `CA`/`CR` formed as sums of three
//! effectiveness contributions each (kept as explicit sums so the
//! transcription is auditable).

use polyalg::{Polynomial, VarId};

use crate::ModelError;

/// Aileron-channel effectiveness constant (sum of three contributions).
pub fn aileron_channel_constant() -> f64 {
    9.0028e-7 - 6.0019e-7 + 0.001
}

/// Rudder-channel effectiveness constant (sum of three contributions).
pub fn rudder_channel_constant() -> f64 {
    3.6317e-4 + 2.4205e-4 + 0.001
}

const BETA_EFFECTIVENESS: f64 = 4.2646;
const P_POLY: [f64; 3] = [-0.125, 0.07854, -0.0013708];
const R_FACTOR: f64 = 0.05236;
const ROW1_SCALE: f64 = 0.0750;
const ROW2_SCALE: f64 = 0.4500;

/// Evaluate the disturbance at a state/control point.
pub fn delta_eval(x_q: &[f64; 4], u: &[f64; 2]) -> [f64; 2] {
    let (beta, p, r) = (x_q[0], x_q[2], x_q[3]);
    let eff = 1.0 - BETA_EFFECTIVENESS * beta * beta;
    let pa = P_POLY[0] + P_POLY[1] * p + P_POLY[2] * p * p;
    let rf = 1.0 + R_FACTOR * r;
    [
        eff * aileron_channel_constant() * u[0] + ROW1_SCALE * pa * rf,
        eff * rudder_channel_constant() * u[1] + ROW2_SCALE * pa * rf,
    ]
}

/// The disturbance as polynomials over six variables: states
/// `(beta, phi, p, r)` at the given ids and controls `(da, dr)` at the
/// two ids that follow. Substituting control polynomials into the last
/// two variables yields the closed-loop disturbance field.
pub fn delta_polynomials(
    state_vars: [VarId; 4],
    control_vars: [VarId; 2],
    nvars: usize,
) -> Result<[Polynomial; 2], ModelError> {
    let var = |v: VarId| Polynomial::var_in(v, nvars);
    let konst = |c: f64| Polynomial::constant_in(c, nvars);
    let beta = var(state_vars[0]);
    let p = var(state_vars[2]);
    let r = var(state_vars[3]);
    let da = var(control_vars[0]);
    let dr = var(control_vars[1]);

    let eff = konst(1.0).sub(&beta.mul(&beta)?.scale(BETA_EFFECTIVENESS))?;
    let pa = konst(P_POLY[0])
        .add(&p.scale(P_POLY[1]))?
        .add(&p.mul(&p)?.scale(P_POLY[2]))?;
    let rf = konst(1.0).add(&r.scale(R_FACTOR))?;
    let pa_rf = pa.mul(&rf)?;

    let row1 = eff
        .mul(&da)?
        .scale(aileron_channel_constant())
        .add(&pa_rf.scale(ROW1_SCALE))?;
    let row2 = eff
        .mul(&dr)?
        .scale(rudder_channel_constant())
        .add(&pa_rf.scale(ROW2_SCALE))?;
    Ok([row1, row2])
}
