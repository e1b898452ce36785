//! Canonical sparse monomials with graded-lexicographic ordering.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::VarId;

/// A monomial in canonical sparse form: sorted `(variable, power)` pairs
/// with every stored power nonzero. The empty monomial is the constant `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    pairs: Vec<(VarId, u32)>,
}

impl Monomial {
    /// The constant monomial `1`.
    pub fn one() -> Self {
        Monomial { pairs: Vec::new() }
    }

    /// The monomial `x_v`.
    pub fn var(v: VarId) -> Self {
        Monomial { pairs: vec![(v, 1)] }
    }

    /// The monomial `x_v^k` (canonicalized: `k = 0` gives the constant).
    pub fn var_pow(v: VarId, k: u32) -> Self {
        if k == 0 {
            Monomial::one()
        } else {
            Monomial { pairs: vec![(v, k)] }
        }
    }

    /// Builds a monomial from arbitrary `(variable, power)` pairs, merging
    /// duplicates and dropping zero powers.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut v: Vec<(VarId, u32)> = Vec::new();
        for (var, pow) in pairs {
            if pow == 0 {
                continue;
            }
            v.push((var, pow));
        }
        v.sort_by_key(|&(var, _)| var);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(v.len());
        for (var, pow) in v {
            match merged.last_mut() {
                Some((lv, lp)) if *lv == var => *lp += pow,
                _ => merged.push((var, pow)),
            }
        }
        Monomial { pairs: merged }
    }

    /// Builds a monomial from a dense exponent vector indexed by variable id.
    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial::from_pairs(exps.iter().enumerate().map(|(v, &p)| (v, p)))
    }

    /// Dense exponent vector over variables `0..nvars`.
    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0u32; nvars];
        for &(v, p) in &self.pairs {
            if v < nvars {
                out[v] = p;
            }
        }
        out
    }

    /// Total degree (sum of powers).
    pub fn degree(&self) -> u32 {
        self.pairs.iter().map(|&(_, p)| p).sum()
    }

    /// Power of a single variable (zero if absent).
    pub fn power_of(&self, v: VarId) -> u32 {
        self.pairs
            .iter()
            .find(|&&(var, _)| var == v)
            .map_or(0, |&(_, p)| p)
    }

    /// True for the constant monomial.
    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Iterates the `(variable, power)` pairs in ascending variable order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.pairs.iter().copied()
    }

    /// Largest variable id present, if any.
    pub fn max_var(&self) -> Option<VarId> {
        self.pairs.last().map(|&(v, _)| v)
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pairs = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() && j < other.pairs.len() {
            let (va, pa) = self.pairs[i];
            let (vb, pb) = other.pairs[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    pairs.push((va, pa));
                    i += 1;
                }
                Ordering::Greater => {
                    pairs.push((vb, pb));
                    j += 1;
                }
                Ordering::Equal => {
                    pairs.push((va, pa + pb));
                    i += 1;
                    j += 1;
                }
            }
        }
        pairs.extend_from_slice(&self.pairs[i..]);
        pairs.extend_from_slice(&other.pairs[j..]);
        Monomial { pairs }
    }
}

/// Graded lexicographic order: degree-major; within a degree, exponent
/// vectors compare lexicographically in ascending variable order (so the
/// power concentrates on the last variable first: `y < xy < x²` for
/// variables ordered `x` before `y` — dense tuples `(0,1) < (1,1) < (2,0)`
/// by first differing position).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Walk both sparse pair lists in ascending variable order; at the
        // first variable whose powers differ, the larger power sorts later
        // (it makes the dense tuple larger at that position).
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.pairs.get(i), other.pairs.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, pa)), Some(&(vb, pb))) => match va.cmp(&vb) {
                    // `self` has a nonzero power at an earlier variable:
                    // its dense tuple is larger there.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match pa.cmp(&pb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, p)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if p == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{p}")?;
            }
        }
        Ok(())
    }
}
