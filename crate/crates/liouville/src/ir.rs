//! Problem intermediate representation: piecewise-polynomial dynamics on
//! semialgebraic supports, plus the optional reference/coupling split that
//! enables structured (clustered) relaxations.
//!
//! # Variable conventions
//!
//! All polynomials in a [`ValidationProblem`] are written over *state*
//! variables with contiguous ids `0..nvars`. Time is **not** a state
//! variable here; the relaxation assembler introduces it as an extra
//! cluster variable internally. Problems are expected in *normalized*
//! coordinates: time runs over `[0, 1]` and every state is confined to a
//! known box (typically `[-1, 1]`), which keeps the moment scaling of the
//! relaxation well conditioned.
//!
//! # Coupled variables and the parsimony conditions
//!
//! Every cluster variable carries a differential equation (the cell fields
//! have one component per variable). When a [`ReferenceBlock`] is present,
//! the *trailing* `m = coupled_outputs.len()` cluster variables are
//! additionally bound to the reference through the coupled-output maps
//! `w_k = E_k(x_r)`: the structured relaxation equates the `(time, w)`
//! marginal of the occupation measures with the image of the reference
//! occupation measure under `E`.
//!
//! For that coupling to describe one consistent flow, the coupled
//! variables must form a *self-contained generator* whose dynamics are the
//! exact pushforward of the reference flow (the parsimony conditions,
//! enforced by [`ValidationProblem::validate`]):
//!
//! 1. each coupled component's field references only coupled variables,
//! 2. the coupled components agree across all cells, and
//! 3. each image is flow-invariant: `grad E_k . f_ref` equals the coupled
//!    field component with `w_j := E_j(x_r)` substituted.

use std::collections::BTreeMap;

use polyalg::Polynomial;
use serde::{Deserialize, Serialize};

use crate::LiouvilleError;

/// A basic closed semialgebraic set `{x : g_k(x) >= 0 for all k}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemialgebraicSet {
    /// Defining inequalities, each interpreted as `g(x) >= 0`.
    pub inequalities: Vec<Polynomial>,
}

impl SemialgebraicSet {
    pub fn new(inequalities: Vec<Polynomial>) -> Self {
        Self { inequalities }
    }

    /// The set with no constraints (the whole space).
    pub fn unconstrained() -> Self {
        Self {
            inequalities: Vec::new(),
        }
    }

    /// Box constraints `halfwidth_i^2 - x_i^2 >= 0` for the given variables,
    /// each expressed in an `nvars`-variable universe.
    pub fn centered_box(halfwidths: &[(usize, f64)], nvars: usize) -> Self {
        let inequalities = halfwidths
            .iter()
            .map(|&(v, a)| {
                let x = Polynomial::var_in(v, nvars);
                let x2 = x.mul(&x).expect("same universe");
                Polynomial::constant_in(a * a, nvars)
                    .sub(&x2)
                    .expect("same universe")
            })
            .collect();
        Self { inequalities }
    }
}

/// One cell of a piecewise-polynomial vector field: a polynomial guard
/// region together with the field that governs the flow inside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    /// Human-readable cell name used in diagnostics and block labels.
    pub name: String,
    /// Guard inequalities `g(x) >= 0` delimiting where this cell is active.
    pub guard: Vec<Polynomial>,
    /// Field components `dx_i/dt = f_i(x)`, one per state variable.
    pub field: Vec<Polynomial>,
}

/// A piecewise-polynomial autonomous system over a single variable cluster.
///
/// The union of cell guards is expected to cover the state box; guards may
/// overlap on their (measure-zero) boundary, which the occupation-measure
/// formulation tolerates because trajectories spend zero time there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseSystem {
    /// Total number of state variables.
    pub nvars: usize,
    /// The covering cells.
    pub cells: Vec<Cell>,
}

impl PiecewiseSystem {
    /// Largest degree over all cells of any field component.
    pub fn field_degree(&self) -> u32 {
        self.cells
            .iter()
            .flat_map(|c| c.field.iter())
            .map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }
}

/// The autonomous block a structured problem couples to: its own dynamics,
/// support box, deterministic initial point, and the polynomial maps that
/// feed the plant cluster's exogenous variables.
///
/// All polynomials here live in the reference block's *own* variable space
/// `0..nvars`; the assembler never mixes the two id spaces directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceBlock {
    /// Number of reference state variables.
    pub nvars: usize,
    /// Names of the reference state variables, `nvars` entries.
    pub var_names: Vec<String>,
    /// Polynomial field `dx_r/dt = f_r(x_r)`, one component per variable.
    pub field: Vec<Polynomial>,
    /// Support box for the reference trajectory.
    pub x_box: SemialgebraicSet,
    /// Deterministic initial condition (the reference starts at a point,
    /// so its initial measure is a Dirac and never becomes a variable).
    pub initial_point: Vec<f64>,
    /// Coupled-output maps, one per coupled plant variable in order:
    /// trailing cluster variable `nvars - len() + k` is constrained to
    /// equal `coupled_outputs[k](x_r)` in distribution over time.
    pub coupled_outputs: Vec<Polynomial>,
}

/// A complete bound-computation instance in normalized coordinates: the
/// closed-loop system, initial and global supports, the terminal cost whose
/// worst-case expectation is maximized, and (optionally) the structured
/// split into a plant cluster plus an autonomous reference block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationProblem {
    /// Plant-cluster system.
    pub system: PiecewiseSystem,
    /// Names of the plant state variables, `system.nvars` entries.
    pub state_names: Vec<String>,
    /// Initial-set inequalities over the plant-cluster variables.
    pub x0: SemialgebraicSet,
    /// Variables pinned to exact values at time zero (Dirac coordinates of
    /// the initial measure), as `(variable, value)` pairs.
    pub x0_pins: Vec<(usize, f64)>,
    /// Global support box over all plant-cluster variables; trajectories
    /// are certified only while they remain inside it.
    pub x_box: SemialgebraicSet,
    /// Terminal cost over the plant-cluster variables; the relaxation
    /// maximizes its expectation under the terminal measure.
    pub terminal_cost: Polynomial,
    /// Optional autonomous reference block for structured assembly.
    pub reference: Option<ReferenceBlock>,
}

/// Relative coefficient tolerance for the flow-invariance identity between
/// a coupled field component and the pushforward of the reference field.
/// The two sides are built from the same gain constants through different
/// arithmetic orders, so they agree to a handful of ulps; anything beyond
/// this tolerance indicates a genuinely inconsistent coupling.
pub const FLOW_INVARIANCE_TOLERANCE: f64 = 1e-9;

impl ValidationProblem {
    /// Number of trailing cluster variables bound to reference images.
    pub fn coupled_vars(&self) -> usize {
        self.reference
            .as_ref()
            .map_or(0, |r| r.coupled_outputs.len())
    }

    /// Check internal consistency: dimensions, variable ranges, and (when a
    /// reference block is present) the parsimony conditions that make the
    /// coupled trailing variables an exact pushforward of the reference
    /// flow (see the module docs).
    pub fn validate(&self) -> Result<(), LiouvilleError> {
        let sys = &self.system;
        let bad = |msg: String| Err(LiouvilleError::InvalidProblem(msg));
        if sys.nvars == 0 {
            return bad("system has no state variables".into());
        }
        if self.state_names.len() != sys.nvars {
            return bad(format!(
                "expected {} state names, found {}",
                sys.nvars,
                self.state_names.len()
            ));
        }
        if sys.cells.is_empty() {
            return bad("system has no cells".into());
        }
        for cell in &sys.cells {
            if cell.field.len() != sys.nvars {
                return bad(format!(
                    "cell '{}' has {} field components, expected {}",
                    cell.name,
                    cell.field.len(),
                    sys.nvars
                ));
            }
            for p in cell.field.iter().chain(cell.guard.iter()) {
                check_max_var(p, sys.nvars, &format!("cell '{}'", cell.name))?;
            }
        }
        for p in &self.x_box.inequalities {
            check_max_var(p, sys.nvars, "global box")?;
        }
        for p in &self.x0.inequalities {
            check_max_var(p, sys.nvars, "initial set")?;
        }
        check_max_var(&self.terminal_cost, sys.nvars, "terminal cost")?;
        for &(v, _) in &self.x0_pins {
            if v >= sys.nvars {
                return bad(format!(
                    "pinned variable {v} outside state universe of size {}",
                    sys.nvars
                ));
            }
        }
        if let Some(r) = &self.reference {
            if r.var_names.len() != r.nvars {
                return bad(format!(
                    "reference block has {} variable names, expected {}",
                    r.var_names.len(),
                    r.nvars
                ));
            }
            if r.field.len() != r.nvars {
                return bad(format!(
                    "reference block has {} field components, expected {}",
                    r.field.len(),
                    r.nvars
                ));
            }
            if r.initial_point.len() != r.nvars {
                return bad(format!(
                    "reference initial point has dimension {}, expected {}",
                    r.initial_point.len(),
                    r.nvars
                ));
            }
            let m = r.coupled_outputs.len();
            if m == 0 || m > sys.nvars {
                return bad(format!(
                    "{m} coupled outputs for a {}-variable cluster",
                    sys.nvars
                ));
            }
            for p in r.field.iter().chain(r.coupled_outputs.iter()) {
                check_max_var(p, r.nvars, "reference block")?;
            }
            for p in &r.x_box.inequalities {
                check_max_var(p, r.nvars, "reference box")?;
            }
            self.check_parsimony(r, m)?;
        }
        Ok(())
    }

    /// Parsimony conditions for the coupled trailing variables (see the
    /// module docs): self-contained, cell-independent, flow-invariant.
    fn check_parsimony(&self, r: &ReferenceBlock, m: usize) -> Result<(), LiouvilleError> {
        let sys = &self.system;
        let bad = |msg: String| Err(LiouvilleError::InvalidProblem(msg));
        let first = sys.nvars - m;
        let base = &sys.cells[0];
        for k in 0..m {
            let row = &base.field[first + k];
            // 1. self-contained: only coupled variables appear.
            for (mono, _) in row.terms() {
                if mono.iter().any(|(v, _)| v < first) {
                    return bad(format!(
                        "coupled variable {} has dynamics referencing \
                         non-coupled cluster variables; the coupled block \
                         must be a self-contained generator",
                        first + k
                    ));
                }
            }
            // 2. identical across cells.
            for cell in &sys.cells[1..] {
                if cell.field[first + k] != *row {
                    return bad(format!(
                        "coupled variable {} has cell-dependent dynamics \
                         ('{}' vs '{}')",
                        first + k,
                        base.name,
                        cell.name
                    ));
                }
            }
            // 3. flow-invariance: grad E_k . f_ref == row(w := E(x_r)).
            let mut pushforward = Polynomial::zero(r.field[0].universe().to_vec());
            for (i, fi) in r.field.iter().enumerate() {
                let de = r.coupled_outputs[k].differentiate(i);
                if !de.is_zero() {
                    pushforward = pushforward.add(&de.mul(fi)?)?;
                }
            }
            let subst: BTreeMap<usize, Polynomial> = (0..m)
                .map(|j| (first + j, r.coupled_outputs[j].clone()))
                .collect();
            let substituted = row.substitute(&subst, (0..r.nvars).collect())?;
            let diff = pushforward.sub(&substituted)?;
            let scale = poly_max_abs_coeff(&pushforward)
                .max(poly_max_abs_coeff(&substituted))
                .max(1.0);
            let err = poly_max_abs_coeff(&diff);
            if err > FLOW_INVARIANCE_TOLERANCE * scale {
                return bad(format!(
                    "coupled output {k} is not flow-invariant: pushforward \
                     and generator rows differ by {err:.3e} (relative \
                     tolerance {FLOW_INVARIANCE_TOLERANCE:.1e})"
                ));
            }
        }
        Ok(())
    }
}

fn poly_max_abs_coeff(p: &Polynomial) -> f64 {
    p.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max)
}

fn check_max_var(p: &Polynomial, nvars: usize, what: &str) -> Result<(), LiouvilleError> {
    for (m, _) in p.terms() {
        if let Some(v) = m.max_var() {
            if v >= nvars {
                return Err(LiouvilleError::InvalidProblem(format!(
                    "{what}: polynomial references variable {v}, outside universe of size {nvars}"
                )));
            }
        }
    }
    Ok(())
}
