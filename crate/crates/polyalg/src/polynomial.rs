//! Sparse multivariate polynomials over an explicit variable universe.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Monomial, PolyError, VarId, COEFF_DROP_TOLERANCE};

/// A sparse multivariate polynomial: canonical map from [`Monomial`] to
/// nonzero coefficient, over an explicit ordered variable universe.
///
/// The `terms` map iterates in graded-lexicographic order, so serialization
/// and display are deterministic and diffable.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    universe: Vec<VarId>,
    terms: BTreeMap<Monomial, f64>,
}

impl Polynomial {
    /// The zero polynomial over the given universe.
    pub fn zero(universe: Vec<VarId>) -> Self {
        Polynomial {
            universe: canonical_universe(universe),
            terms: BTreeMap::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(c: f64, universe: Vec<VarId>) -> Self {
        let mut p = Polynomial::zero(universe);
        p.add_term(Monomial::one(), c);
        p
    }

    /// The polynomial `x_v` over the given universe.
    pub fn var(v: VarId, universe: Vec<VarId>) -> Result<Self, PolyError> {
        let mut p = Polynomial::zero(universe);
        if !p.universe.contains(&v) {
            return Err(PolyError::OutsideUniverse { var: v });
        }
        p.add_term(Monomial::var(v), 1.0);
        Ok(p)
    }

    /// Convenience constructor over the contiguous universe `0..nvars`.
    pub fn var_in(v: VarId, nvars: usize) -> Self {
        Polynomial::var(v, (0..nvars).collect()).expect("variable within contiguous universe")
    }

    /// Convenience constructor for a constant over `0..nvars`.
    pub fn constant_in(c: f64, nvars: usize) -> Self {
        Polynomial::constant(c, (0..nvars).collect())
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Monomial, f64)>,
        universe: Vec<VarId>,
    ) -> Result<Self, PolyError> {
        let mut p = Polynomial::zero(universe);
        for (m, c) in terms {
            if let Some(v) = m.iter().map(|(v, _)| v).find(|v| !p.universe.contains(v)) {
                return Err(PolyError::OutsideUniverse { var: v });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// The ordered variable universe.
    pub fn universe(&self) -> &[VarId] {
        &self.universe
    }

    /// Iterates `(monomial, coefficient)` in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True if the polynomial is identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    fn add_term(&mut self, m: Monomial, c: f64) {
        use std::collections::btree_map::Entry;
        if c == 0.0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                if c.abs() >= COEFF_DROP_TOLERANCE {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                let v = slot.get() + c;
                if v.abs() < COEFF_DROP_TOLERANCE {
                    slot.remove();
                } else {
                    *slot.get_mut() = v;
                }
            }
        }
    }

    fn check_universe(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.universe != other.universe {
            let var = self
                .universe
                .iter()
                .chain(other.universe.iter())
                .copied()
                .find(|v| !self.universe.contains(v) || !other.universe.contains(v))
                .unwrap_or(0);
            return Err(PolyError::UniverseMismatch { var });
        }
        Ok(())
    }

    /// Sum of two polynomials over the same universe.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    /// Difference of two polynomials over the same universe.
    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -*c);
        }
        Ok(out)
    }

    /// Product of two polynomials over the same universe.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_universe(other)?;
        let mut out = Polynomial::zero(self.universe.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Scalar multiple.
    pub fn scale(&self, k: f64) -> Polynomial {
        let mut out = Polynomial::zero(self.universe.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    /// Exact partial derivative with respect to `var`.
    pub fn differentiate(&self, var: VarId) -> Polynomial {
        let mut out = Polynomial::zero(self.universe.clone());
        for (m, c) in &self.terms {
            let p = m.power_of(var);
            if p == 0 {
                continue;
            }
            let reduced = Monomial::from_pairs(
                m.iter()
                    .map(|(v, k)| if v == var { (v, k - 1) } else { (v, k) }),
            );
            out.add_term(reduced, c * p as f64);
        }
        out
    }

    /// Direct evaluation at a point given as a variable→value map.
    pub fn evaluate(&self, point: &BTreeMap<VarId, f64>) -> Result<f64, PolyError> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (v, p) in m.iter() {
                let x = point
                    .get(&v)
                    .copied()
                    .ok_or(PolyError::MissingAssignment { var: v })?;
                t *= x.powi(p as i32);
            }
            total += t;
        }
        Ok(total)
    }

    /// Evaluation at a dense point indexed by variable id.
    pub fn evaluate_dense(&self, point: &[f64]) -> Result<f64, PolyError> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (v, p) in m.iter() {
                let x = *point
                    .get(v)
                    .ok_or(PolyError::MissingAssignment { var: v })?;
                t *= x.powi(p as i32);
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact composition: replaces each mapped variable by its image
    /// polynomial (affine or general) over the target universe; unmapped
    /// variables pass through unchanged and must exist in the target
    /// universe.
    pub fn substitute(
        &self,
        map: &BTreeMap<VarId, Polynomial>,
        target_universe: Vec<VarId>,
    ) -> Result<Polynomial, PolyError> {
        let target = canonical_universe(target_universe);
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(*c, target.clone());
            for (v, p) in m.iter() {
                let image = match map.get(&v) {
                    Some(img) => {
                        if img.universe != target {
                            return Err(PolyError::UniverseMismatch {
                                var: img
                                    .universe
                                    .iter()
                                    .copied()
                                    .find(|u| !target.contains(u))
                                    .unwrap_or(v),
                            });
                        }
                        img.clone()
                    }
                    None => {
                        if !target.contains(&v) {
                            return Err(PolyError::UnmappedVariable { var: v });
                        }
                        Polynomial::var(v, target.clone())?
                    }
                };
                for _ in 0..p {
                    acc = acc.mul(&image)?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }
}

fn canonical_universe(mut u: Vec<VarId>) -> Vec<VarId> {
    u.sort_unstable();
    u.dedup();
    u
}

/// Maclaurin polynomial of the logistic-type basis function `(1 + eˣ)⁻¹`
/// truncated at the requested odd degree, in the single variable `var` over
/// the given universe:
///
/// ```text
/// 1/2 − x/4 + x³/48 − x⁵/480
/// ```
///
/// Even powers ≥ 2 vanish identically. Supported degrees: 1, 3, 5.
pub fn sigmoid_taylor(
    degree: u32,
    var: VarId,
    universe: Vec<VarId>,
) -> Result<Polynomial, PolyError> {
    let coeffs: &[(u32, f64)] = match degree {
        1 => &[(0, 0.5), (1, -0.25)],
        3 => &[(0, 0.5), (1, -0.25), (3, 1.0 / 48.0)],
        5 => &[(0, 0.5), (1, -0.25), (3, 1.0 / 48.0), (5, -1.0 / 480.0)],
        d => return Err(PolyError::UnsupportedSigmoidDegree(d)),
    };
    Polynomial::from_terms(
        coeffs.iter().map(|&(p, c)| (Monomial::var_pow(var, p), c)),
        universe,
    )
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{c}")?;
            } else if *c < 0.0 {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            if !m.is_one() {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

/// Serialized shape: explicit exponent pairs so the graded-lex internal
/// order never leaks into the on-disk contract.
#[derive(Serialize, Deserialize)]
struct TermRecord {
    exponents: Vec<(VarId, u32)>,
    coeff: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    universe: Vec<VarId>,
    terms: Vec<TermRecord>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRecord {
            universe: self.universe.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| TermRecord {
                    exponents: m.iter().collect(),
                    coeff: c,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = PolyRecord::deserialize(d)?;
        Polynomial::from_terms(
            rec.terms
                .into_iter()
                .map(|t| (Monomial::from_pairs(t.exponents), t.coeff)),
            rec.universe,
        )
        .map_err(serde::de::Error::custom)
    }
}
