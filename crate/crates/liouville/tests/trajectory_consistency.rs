//! End-to-end consistency of assembled rows against an analytic trajectory.
//!
//! For the decoupled toy (plant `x' = -x` from `x(0) = 1`, reference
//! `xr' = -2 xr` from `xr(0) = 1/2`, coupled output `w = xr`) the exact
//! solution is `x(s) = exp(-s)`, `xr(s) = exp(-2s)/2`. Moments of the
//! trajectory's initial/terminal Diracs and of its time-averaged
//! occupation measures must satisfy *every* assembled equality row: the
//! transport rows by the fundamental theorem of calculus, the marginal
//! rows because `w` follows the reference exactly, and the pin/mass rows
//! by construction. Any sign, right-hand-side, or indexing mistake in
//! assembly breaks this in the first few rows.

use liouville::{
    assemble_relaxation, Cell, MeasureDecl, MomentRelaxation, PiecewiseSystem, ReferenceBlock,
    SemialgebraicSet, Structure, ValidationProblem,
};
use polyalg::Polynomial;

/// Simpson quadrature is exact to O(h^4); with 4000 panels on smooth
/// exponential integrands the row residuals sit near 1e-13, so this bound
/// has four orders of headroom while still catching real assembly errors.
const ROW_RESIDUAL_TOLERANCE: f64 = 1e-9;

fn coupled_toy() -> ValidationProblem {
    let x = Polynomial::var_in(0, 1);
    ValidationProblem {
        system: PiecewiseSystem {
            nvars: 2,
            dynamic_vars: 1,
            cells: vec![Cell {
                name: "all".into(),
                guard: vec![],
                field: vec![Polynomial::var_in(0, 2).scale(-1.0)],
            }],
        },
        state_names: vec!["x".into(), "w".into()],
        x0: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
        x0_pins: vec![(0, 1.0)],
        x_box: SemialgebraicSet::centered_box(&[(0, 1.0), (1, 1.0)], 2),
        terminal_cost: x.mul(&x).unwrap(),
        reference: Some(ReferenceBlock {
            nvars: 1,
            var_names: vec!["xr".into()],
            field: vec![Polynomial::var_in(0, 1).scale(-2.0)],
            x_box: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
            initial_point: vec![0.5],
            coupled_outputs: vec![Polynomial::var_in(0, 1)],
        }),
    }
}

fn x_at(s: f64) -> f64 {
    (-s).exp()
}

fn xr_at(s: f64) -> f64 {
    0.5 * (-2.0 * s).exp()
}

fn simpson(f: impl Fn(f64) -> f64) -> f64 {
    let n = 4000usize; // even
    let h = 1.0 / n as f64;
    let mut acc = f(0.0) + f(1.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    acc * h / 3.0
}

fn dirac_moments(decl: &MeasureDecl, point: &[f64]) -> Vec<f64> {
    (0..decl.basis.len())
        .map(|i| {
            decl.basis
                .exponents(i)
                .iter()
                .zip(point)
                .map(|(&k, &v)| v.powi(k as i32))
                .product()
        })
        .collect()
}

/// Moments of the occupation measure of `s -> traj(s)` over `[0, 1]`,
/// where local variable 0 of the measure is time.
fn occupation_moments(decl: &MeasureDecl, traj: impl Fn(f64) -> Vec<f64>) -> Vec<f64> {
    (0..decl.basis.len())
        .map(|i| {
            let e = decl.basis.exponents(i).to_vec();
            simpson(|s| {
                let xs = traj(s);
                let mut v = s.powi(e[0] as i32);
                for (k, &p) in e[1..].iter().enumerate() {
                    v *= xs[k].powi(p as i32);
                }
                v
            })
        })
        .collect()
}

/// Build the full moment vector of the analytic trajectory for either the
/// dense or the sparse assembly of the toy, keyed by measure name.
fn trajectory_moments(relax: &MomentRelaxation, dense: bool) -> Vec<f64> {
    let mut y = vec![0.0; relax.num_moments];
    for m in &relax.measures {
        let vals = match (m.name.as_str(), dense) {
            ("mu0", true) => dirac_moments(m, &[1.0, 0.5]),
            ("muT", true) => dirac_moments(m, &[x_at(1.0), xr_at(1.0)]),
            ("occ[all]", true) => occupation_moments(m, |s| vec![x_at(s), xr_at(s)]),
            ("mu0", false) => dirac_moments(m, &[1.0]),
            ("muT", false) => dirac_moments(m, &[x_at(1.0)]),
            ("occ[all]", false) => occupation_moments(m, |s| vec![x_at(s), xr_at(s)]),
            ("nu", false) => occupation_moments(m, |s| vec![xr_at(s)]),
            ("nuT", false) => dirac_moments(m, &[xr_at(1.0)]),
            other => panic!("unexpected measure {other:?}"),
        };
        y[m.offset..m.offset + vals.len()].copy_from_slice(&vals);
    }
    y
}

fn assert_rows_hold(relax: &MomentRelaxation, y: &[f64]) {
    for row in &relax.rows {
        let lhs: f64 = row.terms.iter().map(|&(i, c)| c * y[i]).sum();
        let resid = (lhs - row.rhs).abs();
        assert!(
            resid < ROW_RESIDUAL_TOLERANCE,
            "row '{}' residual {resid:.3e}",
            row.label
        );
    }
}

#[test]
fn dense_rows_hold_along_the_analytic_trajectory() {
    for d in [2u32, 3] {
        let relax = assemble_relaxation(&coupled_toy(), d, Structure::Dense).unwrap();
        let y = trajectory_moments(&relax, true);
        assert_rows_hold(&relax, &y);
    }
}

#[test]
fn sparse_rows_hold_along_the_analytic_trajectory() {
    for d in [2u32, 3] {
        let relax = assemble_relaxation(&coupled_toy(), d, Structure::Sparse).unwrap();
        let y = trajectory_moments(&relax, false);
        assert_rows_hold(&relax, &y);
    }
}

#[test]
fn objective_evaluates_to_terminal_cost_of_the_trajectory() {
    let relax = assemble_relaxation(&coupled_toy(), 2, Structure::Sparse).unwrap();
    let y = trajectory_moments(&relax, false);
    let obj: f64 = relax.objective.iter().map(|&(i, c)| c * y[i]).sum();
    let expected = x_at(1.0) * x_at(1.0); // e^{-2}
    assert!((obj - expected).abs() < 1e-12);
}
