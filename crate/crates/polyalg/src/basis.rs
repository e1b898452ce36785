//! Graded-lexicographic monomial basis with bijective position indexing.

use std::collections::HashMap;

use crate::{binomial, Monomial, VarId};

/// The monomial basis of all exponent vectors of total degree ≤ `max_degree`
/// over an ordered variable list, enumerated in graded-lexicographic order
/// (degree-major; ascending lexicographic on the dense exponent tuple within
/// each degree). Position 0 is the constant monomial; the size is
/// `binomial(n + d, d)`.
///
/// The index map is a verified bijection: `position → exponents → position`
/// round-trips for every entry.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    vars: Vec<VarId>,
    max_degree: u32,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    /// Enumerates the basis for the given ordered variables and degree cap.
    pub fn new(vars: Vec<VarId>, max_degree: u32) -> Self {
        let n = vars.len();
        let mut exps = Vec::with_capacity(binomial(n + max_degree as usize, max_degree as usize));
        let mut cur = vec![0u32; n];
        for deg in 0..=max_degree {
            gen_degree(&mut exps, &mut cur, 0, deg);
        }
        let index = exps
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            vars,
            max_degree,
            exps,
            index,
        }
    }

    /// Ordered variable ids the exponent positions refer to.
    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    /// Degree cap of the basis.
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Number of basis elements, `binomial(n + d, d)`.
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    /// Whether the basis has no entries (never the case in practice: the
    /// constant monomial is always enumerated).
    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Dense exponent vector at a basis position.
    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    /// Basis position of a dense exponent vector, if present.
    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Converts a basis position into a [`Monomial`] over the basis
    /// variables.
    pub fn monomial(&self, i: usize) -> Monomial {
        Monomial::from_pairs(
            self.exps[i]
                .iter()
                .enumerate()
                .map(|(k, &p)| (self.vars[k], p)),
        )
    }

    /// Basis position of a [`Monomial`] expressed over the basis variables.
    pub fn index_of_monomial(&self, m: &Monomial) -> Option<usize> {
        let mut dense = vec![0u32; self.vars.len()];
        for (v, p) in m.iter() {
            let k = self.vars.iter().position(|&u| u == v)?;
            dense[k] = p;
        }
        self.index_of(&dense)
    }

    /// Iterates dense exponent vectors in basis order.
    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.exps.iter().map(Vec::as_slice)
    }
}

/// Emits all dense exponent vectors of exact total degree `remaining` over
/// positions `pos..n`, ascending-lexicographically: the earliest position
/// takes the smallest power first.
fn gen_degree(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, remaining: u32) {
    let n = cur.len();
    if pos == n {
        if remaining == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = remaining;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for p in 0..=remaining {
        cur[pos] = p;
        gen_degree(out, cur, pos + 1, remaining - p);
        cur[pos] = 0;
    }
}
