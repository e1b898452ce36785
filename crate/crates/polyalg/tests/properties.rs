//! Property-based invariants: ring axioms, derivative consistency with
//! finite differences, substitution round-trips, and basis bijectivity.

use std::collections::BTreeMap;

use polyalg::{Monomial, MonomialBasis, Polynomial};
use proptest::prelude::*;

/// Ring-axiom and derivative checks run at these tolerances; see the crate
/// docs for the cancellation threshold they sit above.
const RING_AXIOM_TOLERANCE: f64 = 1e-12;
const DERIVATIVE_FD_RELATIVE_TOLERANCE: f64 = 1e-6;
const SUBSTITUTION_ROUNDTRIP_TOLERANCE: f64 = 1e-10;

fn arb_poly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let term = (
        proptest::collection::vec(0..=max_deg, nvars),
        -10.0f64..10.0,
    );
    proptest::collection::vec(term, 1..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(
            terms.into_iter().filter_map(|(exps, c)| {
                let m = Monomial::from_dense(&exps);
                (m.degree() <= max_deg).then_some((m, c))
            }),
            (0..nvars).collect(),
        )
        .unwrap()
    })
}

fn max_abs_coeff(p: &Polynomial) -> f64 {
    p.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributivity(
        p in arb_poly(3, 3, 6),
        q in arb_poly(3, 3, 6),
        r in arb_poly(3, 3, 6),
    ) {
        let lhs = p.add(&q).unwrap().mul(&r).unwrap();
        let rhs = p.mul(&r).unwrap().add(&q.mul(&r).unwrap()).unwrap();
        let diff = lhs.sub(&rhs).unwrap();
        let scale = max_abs_coeff(&lhs).max(1.0);
        prop_assert!(
            max_abs_coeff(&diff) <= RING_AXIOM_TOLERANCE * scale,
            "distributivity residual {}", max_abs_coeff(&diff)
        );
    }

    #[test]
    fn commutativity_of_product(
        p in arb_poly(6, 3, 5),
        q in arb_poly(6, 3, 5),
    ) {
        let ab = p.mul(&q).unwrap();
        let ba = q.mul(&p).unwrap();
        let diff = ab.sub(&ba).unwrap();
        prop_assert!(max_abs_coeff(&diff) <= RING_AXIOM_TOLERANCE);
    }

    #[test]
    fn degree_additivity_nonzero(
        p in arb_poly(4, 3, 4),
        q in arb_poly(4, 3, 4),
    ) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let prod = p.mul(&q).unwrap();
        // Leading-term cancellation cannot happen for generic random
        // coefficients; guard against the (measure-zero) case anyway.
        prop_assume!(!prod.is_zero());
        prop_assert!(prod.degree() <= p.degree() + q.degree());
    }

    #[test]
    fn derivative_matches_finite_difference(
        p in arb_poly(3, 4, 6),
        xs in proptest::collection::vec(-1.0f64..1.0, 3),
    ) {
        let dp = p.differentiate(1);
        let mut lo = BTreeMap::new();
        let mut hi = BTreeMap::new();
        let mut mid = BTreeMap::new();
        let h = 1e-6;
        for (v, &x) in xs.iter().enumerate() {
            lo.insert(v, if v == 1 { x - h } else { x });
            hi.insert(v, if v == 1 { x + h } else { x });
            mid.insert(v, x);
        }
        let fd = (p.evaluate(&hi).unwrap() - p.evaluate(&lo).unwrap()) / (2.0 * h);
        let analytic = dp.evaluate(&mid).unwrap();
        let scale = analytic.abs().max(1.0);
        prop_assert!(
            (fd - analytic).abs() <= DERIVATIVE_FD_RELATIVE_TOLERANCE * scale,
            "fd {fd} vs analytic {analytic}"
        );
    }

    #[test]
    fn substitution_round_trip(
        p in arb_poly(2, 3, 5),
        a in 0.5f64..2.0,
        b in -1.0f64..1.0,
    ) {
        // x0 → a·x0 + b followed by x0 → (x0 − b)/a restores p.
        let fwd_img = Polynomial::var_in(0, 2)
            .scale(a)
            .add(&Polynomial::constant_in(b, 2))
            .unwrap();
        let inv_img = Polynomial::var_in(0, 2)
            .scale(1.0 / a)
            .add(&Polynomial::constant_in(-b / a, 2))
            .unwrap();
        let mut fwd = BTreeMap::new();
        fwd.insert(0usize, fwd_img);
        let mut inv = BTreeMap::new();
        inv.insert(0usize, inv_img);
        let round = p
            .substitute(&fwd, vec![0, 1])
            .unwrap()
            .substitute(&inv, vec![0, 1])
            .unwrap();
        let diff = round.sub(&p).unwrap();
        let scale = max_abs_coeff(&p).max(1.0);
        prop_assert!(
            max_abs_coeff(&diff) <= SUBSTITUTION_ROUNDTRIP_TOLERANCE * scale,
            "round-trip residual {}", max_abs_coeff(&diff)
        );
    }
}

#[test]
fn basis_bijection_round_trips() {
    for n in 1..=10usize {
        for d in 0..=6u32 {
            let basis = MonomialBasis::new((0..n).collect(), d);
            let expect = (0..=d).fold(0usize, |acc, k| {
                acc + num_monomials_of_degree(n, k as usize)
            });
            assert_eq!(basis.len(), expect, "size mismatch at n={n} d={d}");
            assert_eq!(basis.exponents(0).iter().sum::<u32>(), 0);
            for i in 0..basis.len() {
                let e = basis.exponents(i).to_vec();
                assert_eq!(basis.index_of(&e), Some(i), "bijection broken at {e:?}");
            }
        }
    }
}

#[test]
fn basis_is_graded_and_lexicographic() {
    let basis = MonomialBasis::new(vec![0, 1], 2);
    let got: Vec<Vec<u32>> = basis.iter().map(|e| e.to_vec()).collect();
    assert_eq!(
        got,
        vec![
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![0, 2],
            vec![1, 1],
            vec![2, 0],
        ]
    );
}

/// Monomials of exact degree k over n variables: C(n+k-1, k).
fn num_monomials_of_degree(n: usize, k: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n + i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
