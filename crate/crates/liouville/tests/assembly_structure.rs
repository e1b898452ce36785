//! Structural checks of relaxation assembly: measure inventory, row
//! counts, block sides, degree rules, and export determinism.
//!
//! The fixture is a decoupled pair of scalar systems: plant `x' = -x`
//! from `x(0) = 1` with terminal cost `x^2`, and reference `xr' = -2 xr`
//! from `xr(0) = 1/2`, coupled only through the identity output `w = xr`
//! entering the plant cluster exogenously. Expected counts below are
//! combinatorial facts of the truncation rules, spelled out per family.

use liouville::{
    assemble_relaxation, merge_reference, to_json, to_sdpa, Cell, PiecewiseSystem,
    ReferenceBlock, SemialgebraicSet, Structure, ValidationProblem,
};
use polyalg::Polynomial;

fn neg_scaled_var(v: usize, k: f64, nvars: usize) -> Polynomial {
    Polynomial::var_in(v, nvars).scale(k)
}

/// Plant `x' = -x` with exogenous `w`; reference `xr' = -2 xr`, `w = xr`.
fn coupled_toy() -> ValidationProblem {
    let x = Polynomial::var_in(0, 1);
    ValidationProblem {
        system: PiecewiseSystem {
            nvars: 2,
            dynamic_vars: 1,
            cells: vec![Cell {
                name: "all".into(),
                guard: vec![],
                field: vec![neg_scaled_var(0, -1.0, 2)],
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
            field: vec![neg_scaled_var(0, -2.0, 1)],
            x_box: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
            initial_point: vec![0.5],
            coupled_outputs: vec![Polynomial::var_in(0, 1)],
        }),
    }
}

#[test]
fn dense_assembly_has_expected_measures_and_rows() {
    let relax = assemble_relaxation(&coupled_toy(), 2, Structure::Dense).unwrap();
    let names: Vec<&str> = relax.measures.iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["mu0", "muT", "occ[all]"]);
    // Joint cluster (x, xr): endpoint measures carry C(2+4,4)=15 moments,
    // the occupation measure C(3+4,4)=35.
    assert_eq!(relax.measures[0].num_moments(), 15);
    assert_eq!(relax.measures[2].num_moments(), 35);
    assert_eq!(relax.num_moments, 15 + 15 + 35);
    // mass(1) + pins(14: every non-constant moment of the fully pinned
    // initial measure) + transport rows (deg f = 1 so test degree is 4 over
    // (s, x, xr): C(3+4,4) = 35).
    assert_eq!(relax.rows.len(), 1 + 14 + 35);
    assert!(relax.warnings.is_empty());
}

#[test]
fn sparse_assembly_has_expected_measures_and_rows() {
    let relax = assemble_relaxation(&coupled_toy(), 2, Structure::Sparse).unwrap();
    let names: Vec<&str> = relax.measures.iter().map(|m| m.name.as_str()).collect();
    assert_eq!(names, ["mu0", "muT", "occ[all]", "nu", "nuT"]);
    // mass(1) + pins(4) + plant transport over (s, x) deg<=4 (15)
    // + reference transport over (s, xr) deg<=4 (15)
    // + marginal rows over (s, w) deg<=4 (15).
    assert_eq!(relax.rows.len(), 1 + 4 + 15 + 15 + 15);
    let marginals = relax
        .rows
        .iter()
        .filter(|r| r.label.starts_with("marginal"))
        .count();
    assert_eq!(marginals, 15);
}

#[test]
fn moment_matrix_sides_follow_cluster_dimensions() {
    let prob = coupled_toy();
    for d in 1..=3u32 {
        let dense = assemble_relaxation(&prob, d, Structure::Dense).unwrap();
        let sparse = assemble_relaxation(&prob, d, Structure::Sparse).unwrap();
        let side = |n: u32| -> usize {
            // C(n + d, d)
            let mut num = 1usize;
            let mut den = 1usize;
            for i in 1..=d as usize {
                num *= n as usize + i;
                den *= i;
            }
            num / den
        };
        // Dense joint cluster has 2 states + time; sparse plant cluster has
        // 2 states + time as well (one dynamic, one exogenous) — this toy
        // checks value equivalence, not size separation.
        assert_eq!(dense.largest_block_side(), side(3));
        assert_eq!(sparse.largest_block_side(), side(3));
        let dense_sides = dense.block_sides();
        assert_eq!(dense_sides[0], ("moment(mu0)".to_string(), side(2)));
    }
}

#[test]
fn pinned_initial_measure_moments_are_fixed_by_rows() {
    // In the dense merge both x (pinned by the plant) and xr (pinned by the
    // reference start) are Dirac directions, so every pin row must relate
    // y_e to the mass moment with coefficient -(1^i * 0.5^j).
    let relax = assemble_relaxation(&coupled_toy(), 2, Structure::Dense).unwrap();
    let mu0 = &relax.measures[0];
    let pin_rows: Vec<_> = relax
        .rows
        .iter()
        .filter(|r| r.label.starts_with("pin"))
        .collect();
    assert_eq!(pin_rows.len(), 14);
    for row in pin_rows {
        assert_eq!(row.rhs, 0.0);
        assert_eq!(row.terms.len(), 2, "pin row must couple exactly two moments");
        let (lhs, rhs_term) = (row.terms[1], row.terms[0]);
        // The stripped moment is the mass moment (id = offset) and the
        // coefficient encodes the pinned values.
        assert_eq!(rhs_term.0, mu0.offset);
        let exps = relax.measures[0]
            .basis
            .exponents(lhs.0 - mu0.offset)
            .to_vec();
        let expected = 0.5f64.powi(exps[1] as i32);
        assert!((rhs_term.1 + expected).abs() < 1e-15, "coefficient -0.5^j");
    }
}

#[test]
fn constant_field_allows_full_test_degree() {
    // deg f = 0 clamps the test degree at the truncation ceiling 2d.
    let prob = ValidationProblem {
        system: PiecewiseSystem {
            nvars: 1,
            dynamic_vars: 1,
            cells: vec![Cell {
                name: "all".into(),
                guard: vec![],
                field: vec![Polynomial::constant_in(0.25, 1)],
            }],
        },
        state_names: vec!["x".into()],
        x0: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
        x0_pins: vec![(0, 0.0)],
        x_box: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
        terminal_cost: Polynomial::var_in(0, 1),
        reference: None,
    };
    let relax = assemble_relaxation(&prob, 2, Structure::Dense).unwrap();
    let transport = relax
        .rows
        .iter()
        .filter(|r| r.label.starts_with("liouville"))
        .count();
    // Test basis over (s, x) of degree <= 4: C(2+4,4) = 15.
    assert_eq!(transport, 15);
}

#[test]
fn high_degree_field_clamps_test_degree_to_zero() {
    // deg f = 2d + 2 drives 2d + 1 - deg f negative; only the constant
    // test function survives, leaving exactly one transport row.
    let x = Polynomial::var_in(0, 1);
    let x2 = x.mul(&x).unwrap();
    let x6 = x2.mul(&x2).unwrap().mul(&x2).unwrap();
    let prob = ValidationProblem {
        system: PiecewiseSystem {
            nvars: 1,
            dynamic_vars: 1,
            cells: vec![Cell {
                name: "all".into(),
                guard: vec![],
                field: vec![x6],
            }],
        },
        state_names: vec!["x".into()],
        x0: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
        x0_pins: vec![],
        x_box: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
        terminal_cost: Polynomial::var_in(0, 1),
        reference: None,
    };
    let relax = assemble_relaxation(&prob, 2, Structure::Dense).unwrap();
    let transport: Vec<_> = relax
        .rows
        .iter()
        .filter(|r| r.label.starts_with("liouville"))
        .collect();
    assert_eq!(transport.len(), 1);
}

#[test]
fn oversized_support_constraint_is_skipped_with_warning() {
    let x = Polynomial::var_in(0, 1);
    let x2 = x.mul(&x).unwrap();
    let x5 = x2.mul(&x2).unwrap().mul(&x).unwrap();
    let prob = ValidationProblem {
        system: PiecewiseSystem {
            nvars: 1,
            dynamic_vars: 1,
            cells: vec![Cell {
                name: "all".into(),
                guard: vec![],
                field: vec![x.scale(-1.0)],
            }],
        },
        state_names: vec!["x".into()],
        x0: SemialgebraicSet::centered_box(&[(0, 1.0)], 1),
        x0_pins: vec![],
        // Degree-5 constraint exceeds 2d = 4 at order 2.
        x_box: SemialgebraicSet::new(vec![Polynomial::constant_in(1.0, 1).sub(&x5).unwrap()]),
        terminal_cost: x2.clone(),
        reference: None,
    };
    let relax = assemble_relaxation(&prob, 2, Structure::Dense).unwrap();
    assert_eq!(relax.warnings.len(), 2, "muT and the occupation measure");
    assert!(relax.warnings[0].contains("degree 5 exceeds 2d = 4"));
    // muT keeps no localizer; the occupation measure keeps only the time box.
    assert!(!relax
        .blocks
        .iter()
        .any(|b| b.name.starts_with("localizing(muT")));
    let occ_localizers = relax
        .blocks
        .iter()
        .filter(|b| b.name.starts_with("localizing(occ"))
        .count();
    assert_eq!(occ_localizers, 1);
}

#[test]
fn sparse_assembly_without_reference_is_rejected() {
    let mut prob = coupled_toy();
    prob.reference = None;
    prob.system.nvars = 1;
    prob.state_names = vec!["x".into()];
    prob.x_box = SemialgebraicSet::centered_box(&[(0, 1.0)], 1);
    let err = assemble_relaxation(&prob, 2, Structure::Sparse).unwrap_err();
    assert!(err.to_string().contains("reference block"));
}

#[test]
fn mismatched_coupled_outputs_are_rejected() {
    let mut prob = coupled_toy();
    prob.reference.as_mut().unwrap().coupled_outputs.clear();
    let err = assemble_relaxation(&prob, 2, Structure::Dense).unwrap_err();
    assert!(err.to_string().contains("coupled outputs"));
}

#[test]
fn merged_problem_matches_hand_built_joint_system() {
    let merged = merge_reference(&coupled_toy()).unwrap();
    assert_eq!(merged.system.nvars, 2);
    assert_eq!(merged.system.dynamic_vars, 2);
    assert_eq!(merged.state_names, vec!["x".to_string(), "xr".to_string()]);
    // Fields: x' = -x and (appended) xr' = -2 xr, both over the merged ids.
    let f = &merged.system.cells[0].field;
    assert_eq!(f[0], neg_scaled_var(0, -1.0, 2));
    assert_eq!(f[1], neg_scaled_var(1, -2.0, 2));
    // The reference start becomes an initial pin alongside the plant's.
    assert_eq!(merged.x0_pins, vec![(0, 1.0), (1, 0.5)]);
    assert!(merged.reference.is_none());
    merged.validate().unwrap();
}

#[test]
fn exports_are_byte_stable_and_hash_tagged() {
    let prob = coupled_toy();
    let a = assemble_relaxation(&prob, 2, Structure::Sparse).unwrap();
    let b = assemble_relaxation(&prob, 2, Structure::Sparse).unwrap();
    let (ja, jb) = (to_json(&a), to_json(&b));
    assert_eq!(ja, jb, "JSON export must be deterministic");
    assert!(ja.contains("\"content_hash\": \"sha256:"));
    let (sa, sb) = (to_sdpa(&a), to_sdpa(&b));
    assert_eq!(sa, sb, "SDPA export must be deterministic");
    let last = sa.lines().last().unwrap();
    assert!(last.starts_with("*content-hash: sha256:"));
    // SDPA header: first non-comment line is the variable count.
    let first = sa.lines().find(|l| !l.starts_with('*')).unwrap();
    assert_eq!(first.trim().parse::<usize>().unwrap(), a.num_moments);
}

#[test]
fn moment_labels_name_measure_and_monomial() {
    let relax = assemble_relaxation(&coupled_toy(), 2, Structure::Sparse).unwrap();
    assert_eq!(relax.moment_label(relax.measures[0].offset), "<mu0, 1>");
    let occ = &relax.measures[2];
    // Ascending-lex on exponent tuples puts (0,0,1) before (1,0,0): the
    // first degree-one moment is the last cluster variable, the time
    // variable comes last within the degree block.
    assert_eq!(relax.moment_label(occ.offset + 1), "<occ[all], w>");
    assert_eq!(relax.moment_label(occ.offset + 3), "<occ[all], s>");
}
