//! Unit contracts for polynomial arithmetic, calculus, and helpers.

use std::collections::BTreeMap;

use approx::assert_abs_diff_eq;
use polyalg::{sigmoid_taylor, Monomial, PolyError, Polynomial};

fn x(nvars: usize) -> Polynomial {
    Polynomial::var_in(0, nvars)
}

#[test]
fn difference_of_squares() {
    let p = x(1).add(&Polynomial::constant_in(1.0, 1)).unwrap();
    let q = x(1).sub(&Polynomial::constant_in(1.0, 1)).unwrap();
    let prod = p.mul(&q).unwrap();
    let expect = x(1)
        .mul(&x(1))
        .unwrap()
        .sub(&Polynomial::constant_in(1.0, 1))
        .unwrap();
    assert_eq!(prod, expect);
}

#[test]
fn additive_identity() {
    let p = x(2)
        .mul(&Polynomial::var_in(1, 2))
        .unwrap()
        .add(&Polynomial::constant_in(3.5, 2))
        .unwrap();
    let zero = Polynomial::zero(vec![0, 1]);
    assert_eq!(p.add(&zero).unwrap(), p);
}

#[test]
fn degree_additivity() {
    // β²·δ_a has total degree 3: degree(p·q) = degree(p) + degree(q).
    let beta = Polynomial::var_in(0, 2);
    let delta_a = Polynomial::var_in(1, 2);
    let b2 = beta.mul(&beta).unwrap();
    assert_eq!(b2.degree(), 2);
    let prod = b2.mul(&delta_a).unwrap();
    assert_eq!(prod.degree(), 3);
    assert_eq!(prod.num_terms(), 1);
}

#[test]
fn universe_mismatch_rejected() {
    let p = Polynomial::constant(1.0, vec![0, 1]);
    let q = Polynomial::constant(1.0, vec![0, 2]);
    match p.add(&q) {
        Err(PolyError::UniverseMismatch { var }) => assert!(var == 1 || var == 2),
        other => panic!("expected universe mismatch, got {other:?}"),
    }
}

#[test]
fn cancellation_drops_tiny_coefficients() {
    let p = x(1).scale(1.0);
    let q = x(1).scale(-1.0 + 1e-16);
    let s = p.add(&q).unwrap();
    assert!(s.is_zero(), "residual terms survived cancellation: {s}");
}

#[test]
fn derivative_of_cube() {
    let x3 = x(1).mul(&x(1)).unwrap().mul(&x(1)).unwrap();
    let d = x3.differentiate(0);
    assert_eq!(d, x(1).mul(&x(1)).unwrap().scale(3.0));
}

#[test]
fn derivative_of_mixed_term() {
    // d/dt (t·x) = x  with t at id 0, x at id 1.
    let t = Polynomial::var_in(0, 2);
    let xv = Polynomial::var_in(1, 2);
    let d = t.mul(&xv).unwrap().differentiate(0);
    assert_eq!(d, xv);
}

#[test]
fn derivative_of_effectiveness_factor() {
    // d/dβ [(1 − 4.2646 β²)·k·δ_a] = −2·4.2646·k·β·δ_a  for a collected
    // aileron coefficient k.
    let k = 9.0028e-7 - 6.0019e-7 + 0.001;
    let beta = Polynomial::var_in(0, 2);
    let delta_a = Polynomial::var_in(1, 2);
    let factor = Polynomial::constant_in(1.0, 2)
        .sub(&beta.mul(&beta).unwrap().scale(4.2646))
        .unwrap();
    let row = factor.mul(&delta_a).unwrap().scale(k);
    let d = row.differentiate(0);
    let expect = beta.mul(&delta_a).unwrap().scale(-2.0 * 4.2646 * k);
    let diff = d.sub(&expect).unwrap();
    assert!(diff.is_zero(), "residual {diff}");
}

#[test]
fn evaluate_simple() {
    let p = x(1)
        .mul(&x(1))
        .unwrap()
        .add(&Polynomial::constant_in(1.0, 1))
        .unwrap();
    let mut pt = BTreeMap::new();
    pt.insert(0, 2.0);
    assert_abs_diff_eq!(p.evaluate(&pt).unwrap(), 5.0, epsilon = 1e-14);
}

#[test]
fn evaluate_constant_anywhere() {
    let p = Polynomial::constant_in(7.0, 3);
    assert_abs_diff_eq!(p.evaluate(&BTreeMap::new()).unwrap(), 7.0, epsilon = 0.0);
}

#[test]
fn evaluate_missing_assignment_names_variable() {
    let p = Polynomial::var_in(1, 2);
    match p.evaluate(&BTreeMap::new()) {
        Err(PolyError::MissingAssignment { var }) => assert_eq!(var, 1),
        other => panic!("expected missing assignment, got {other:?}"),
    }
}

#[test]
fn substitute_scaling() {
    // x² with x → 2y gives 4y².
    let p = x(1).mul(&x(1)).unwrap();
    let mut map = BTreeMap::new();
    map.insert(0usize, Polynomial::var_in(1, 2).scale(2.0));
    let out = p.substitute(&map, vec![0, 1]).unwrap();
    let y = Polynomial::var_in(1, 2);
    assert_eq!(out, y.mul(&y).unwrap().scale(4.0));
}

#[test]
fn substitute_identity() {
    let p = x(2)
        .mul(&Polynomial::var_in(1, 2))
        .unwrap()
        .add(&Polynomial::constant_in(-2.0, 2))
        .unwrap();
    let out = p.substitute(&BTreeMap::new(), vec![0, 1]).unwrap();
    assert_eq!(out, p);
}

#[test]
fn substitute_box_normalization() {
    // β → (30π/180)·β̂ realizes the box-to-unit-interval scaling.
    let a = 30.0 * std::f64::consts::PI / 180.0;
    let beta = Polynomial::var_in(0, 1);
    let mut map = BTreeMap::new();
    map.insert(0usize, Polynomial::var_in(0, 1).scale(a));
    let out = beta.substitute(&map, vec![0]).unwrap();
    let c = out.coeff(&Monomial::var(0));
    assert_abs_diff_eq!(c, 0.5236, epsilon = 1e-4);
}

#[test]
fn sigmoid_degree_one() {
    let s = sigmoid_taylor(1, 0, vec![0]).unwrap();
    assert_abs_diff_eq!(s.coeff(&Monomial::one()), 0.5, epsilon = 0.0);
    assert_abs_diff_eq!(s.coeff(&Monomial::var(0)), -0.25, epsilon = 0.0);
    assert_eq!(s.num_terms(), 2);
}

#[test]
fn sigmoid_value_at_origin() {
    for deg in [1, 3, 5] {
        let s = sigmoid_taylor(deg, 0, vec![0]).unwrap();
        let mut pt = BTreeMap::new();
        pt.insert(0, 0.0);
        assert_abs_diff_eq!(s.evaluate(&pt).unwrap(), 0.5, epsilon = 0.0);
    }
}

#[test]
fn sigmoid_accuracy_on_domain() {
    let s = sigmoid_taylor(3, 0, vec![0]).unwrap();
    let mut pt = BTreeMap::new();
    pt.insert(0, 0.5);
    let approx_val = s.evaluate(&pt).unwrap();
    let exact = 1.0 / (1.0 + 0.5f64.exp());
    assert_abs_diff_eq!(approx_val, 0.37760, epsilon = 1e-5);
    assert!((approx_val - exact).abs() < 1e-3);
}

#[test]
fn sigmoid_rejects_even_degree() {
    assert!(matches!(
        sigmoid_taylor(2, 0, vec![0]),
        Err(PolyError::UnsupportedSigmoidDegree(2))
    ));
}

#[test]
fn serialization_round_trip_is_deterministic() {
    let p = x(2)
        .mul(&Polynomial::var_in(1, 2))
        .unwrap()
        .add(&x(2).scale(-0.5))
        .unwrap()
        .add(&Polynomial::constant_in(3.0, 2))
        .unwrap();
    let json1 = serde_json::to_string(&p).unwrap();
    let back: Polynomial = serde_json::from_str(&json1).unwrap();
    let json2 = serde_json::to_string(&back).unwrap();
    assert_eq!(p, back);
    assert_eq!(json1, json2);
}
