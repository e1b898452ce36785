//! Coordinate normalization and assembly of the complete bound
//! computation instance.
//!
//! Relaxations are solved in normalized coordinates: every state is
//! divided by its box half-width (`x_hat = x / a`) and time by the
//! horizon (`s = t / T`), so all cluster variables and time live in
//! unit-scale boxes and moment magnitudes stay O(1) across degrees.
//! The chain rule gives the normalized field
//!
//! ```text
//!   d x_hat_i / d s = (T / a_i) * f_i(a o x_hat).
//! ```
//!
//! Guards and support sets transform by substitution only (no scaling:
//! sign is what matters). The terminal tracking cost is expressed in
//! *normalized output units*: `h_T = (c_beta/a - beta_hat)^2 +
//! (c_phi/a - phi_hat)^2`, which keeps the order-1 bound at the
//! box-maximum scale regardless of the physical angle units.

use liouville::{PiecewiseSystem, ReferenceBlock, SemialgebraicSet, ValidationProblem};
use polyalg::Polynomial;

use crate::config::{ControlMode, LoopConfig};
use crate::fields::{closed_loop_field, mrac_cluster_split};
use crate::gains::GainSet;
use crate::matrices::{angle_halfwidth, initial_halfwidth, PlantMatrices, WEIGHT_HALFWIDTH};
use crate::ModelError;

/// Substitute `x_i := a_i * x_hat_i` into `p` and divide by `out_scale`:
/// the polynomial `p(a o x_hat) / out_scale` over the same variable ids.
pub fn normalize_polynomial(
    p: &Polynomial,
    halfwidths: &[f64],
    out_scale: f64,
) -> Result<Polynomial, ModelError> {
    let n = halfwidths.len();
    let universe: Vec<usize> = (0..n).collect();
    let mut map = std::collections::BTreeMap::new();
    for (v, &a) in halfwidths.iter().enumerate() {
        map.insert(v, Polynomial::var_in(v, n).scale(a));
    }
    Ok(p.substitute(&map, universe)?.scale(1.0 / out_scale))
}

/// Normalize a piecewise system: states by `halfwidths`, time by
/// `horizon`. Field component `i` becomes `(horizon / halfwidths[i]) *
/// f_i(a o x_hat)`; guards are substituted without scaling.
pub fn normalize_system(
    sys: &PiecewiseSystem,
    halfwidths: &[f64],
    horizon: f64,
) -> Result<PiecewiseSystem, ModelError> {
    if halfwidths.len() != sys.nvars {
        return Err(ModelError::BadConfig(format!(
            "{} half-widths for a {}-variable system",
            halfwidths.len(),
            sys.nvars
        )));
    }
    if halfwidths.iter().any(|&a| !(a > 0.0)) {
        return Err(ModelError::BadConfig(
            "box half-widths must be positive".into(),
        ));
    }
    let mut cells = Vec::with_capacity(sys.cells.len());
    for cell in &sys.cells {
        let field = cell
            .field
            .iter()
            .enumerate()
            .map(|(i, f)| normalize_polynomial(f, halfwidths, halfwidths[i] / horizon))
            .collect::<Result<Vec<_>, _>>()?;
        let guard = cell
            .guard
            .iter()
            .map(|g| normalize_polynomial(g, halfwidths, 1.0))
            .collect::<Result<Vec<_>, _>>()?;
        cells.push(liouville::Cell {
            name: cell.name.clone(),
            guard,
            field,
        });
    }
    Ok(PiecewiseSystem {
        nvars: sys.nvars,
        dynamic_vars: sys.dynamic_vars,
        cells,
    })
}

/// Terminal tracking cost in normalized output units over `nvars`
/// dynamic variables (outputs are variables 0 and 1).
fn normalized_terminal_cost(
    cfg: &LoopConfig,
    angle_hw: f64,
    nvars: usize,
) -> Result<Polynomial, ModelError> {
    let mut h = Polynomial::zero((0..nvars).collect());
    for k in 0..2 {
        let c_hat = cfg.command[k] / angle_hw;
        let dev = Polynomial::constant_in(c_hat, nvars)
            .sub(&Polynomial::var_in(k, nvars))?;
        h = h.add(&dev.mul(&dev)?)?;
    }
    Ok(h)
}

/// Scale of the exogenous coupling variable: the reference feed
/// `xi = PB_phi * phi_r + PB_p * p_r` is bounded by
/// `(|PB_phi| + |PB_p|) * a` over the reference box, so dividing by that
/// gives a unit-box variable with a tight bound.
pub fn coupling_halfwidth(gains: &GainSet) -> f64 {
    (gains.pb[1].abs() + gains.pb[2].abs()) * angle_halfwidth()
}

/// Build the normalized bound-computation instance for the configured
/// loop: baseline mode yields a plain 4-state problem; adaptive mode
/// yields the clustered problem (5 dynamic states + 1 exogenous coupling
/// variable, plus the reference block) whose dense merge is the full
/// 9-state joint relaxation.
pub fn build_validation_problem(
    plant: &PlantMatrices,
    gains: &GainSet,
    cfg: &LoopConfig,
) -> Result<ValidationProblem, ModelError> {
    cfg.validate()?;
    let a = angle_halfwidth();
    let r0 = initial_halfwidth() / a;

    let prob = match cfg.mode {
        ControlMode::Lqr => {
            let sys = closed_loop_field(plant, gains, cfg)?;
            let halfwidths = [a; 4];
            let system = normalize_system(&sys, &halfwidths, cfg.horizon)?;
            ValidationProblem {
                system,
                state_names: vec!["beta".into(), "phi".into(), "p".into(), "r".into()],
                x0: SemialgebraicSet::centered_box(
                    &[(0, r0), (1, r0), (2, r0), (3, r0)],
                    4,
                ),
                x0_pins: vec![],
                x_box: SemialgebraicSet::centered_box(
                    &[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
                    4,
                ),
                terminal_cost: normalized_terminal_cost(cfg, a, 4)?,
                reference: None,
            }
        }
        ControlMode::Mrac => {
            let (cluster, reference) = mrac_cluster_split(plant, gains, cfg)?;
            let axi = coupling_halfwidth(gains);
            let halfwidths = [a, a, a, a, WEIGHT_HALFWIDTH, axi];
            let system = normalize_system(&cluster, &halfwidths, cfg.horizon)?;

            let ref_halfwidths = [a; 4];
            let ref_field = reference
                .field
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    normalize_polynomial(f, &ref_halfwidths, ref_halfwidths[i] / cfg.horizon)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let coupled = reference
                .coupled_outputs
                .iter()
                .map(|p| normalize_polynomial(p, &ref_halfwidths, axi))
                .collect::<Result<Vec<_>, _>>()?;
            let reference = ReferenceBlock {
                nvars: 4,
                var_names: reference.var_names.clone(),
                field: ref_field,
                x_box: SemialgebraicSet::centered_box(
                    &[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0)],
                    4,
                ),
                initial_point: reference
                    .initial_point
                    .iter()
                    .zip(&ref_halfwidths)
                    .map(|(&v, &hw)| v / hw)
                    .collect(),
                coupled_outputs: coupled,
            };

            ValidationProblem {
                system,
                state_names: vec![
                    "beta".into(),
                    "phi".into(),
                    "p".into(),
                    "r".into(),
                    "W".into(),
                    "xi".into(),
                ],
                x0: SemialgebraicSet::centered_box(
                    &[(0, r0), (1, r0), (2, r0), (3, r0)],
                    5,
                ),
                x0_pins: vec![(4, 0.0)],
                x_box: SemialgebraicSet::centered_box(
                    &[(0, 1.0), (1, 1.0), (2, 1.0), (3, 1.0), (4, 1.0), (5, 1.0)],
                    6,
                ),
                terminal_cost: normalized_terminal_cost(cfg, a, 5)?,
                reference: Some(reference),
            }
        }
    };
    prob.validate()?;
    Ok(prob)
}
