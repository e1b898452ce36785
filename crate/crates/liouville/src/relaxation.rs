//! The assembled moment relaxation: measures, moment indexing, linear
//! rows, and positive-semidefinite blocks.
//!
//! # Moment indexing
//!
//! Each measure owns a contiguous range of *global moment ids*. Within a
//! measure, moments are ordered by the graded (degree-major) ascending
//! lexicographic order of their exponent tuples — the same order
//! [`polyalg::MonomialBasis`] enumerates — so the id layout is a pure
//! function of the problem and the relaxation order. Exports and solver
//! inputs derived from this structure are therefore byte-stable across
//! runs, which is what makes content hashes meaningful.

use polyalg::MonomialBasis;

/// One measure of the relaxation: a name, its cluster variables, the
/// relaxation order, and the slice of global moment ids it owns.
#[derive(Debug, Clone)]
pub struct MeasureDecl {
    /// Diagnostic name, e.g. `"mu0"`, `"occ[stable]"`, `"nu"`.
    pub name: String,
    /// Human-readable names of the cluster variables, in local id order.
    pub var_names: Vec<String>,
    /// Relaxation order `d`; moments run up to total degree `2d`.
    pub order: u32,
    /// First global moment id owned by this measure.
    pub offset: usize,
    /// Basis of all monomials of degree `<= 2d` in the cluster variables;
    /// local moment `i` has global id `offset + i`.
    pub basis: MonomialBasis,
}

impl MeasureDecl {
    /// Number of moments this measure contributes.
    pub fn num_moments(&self) -> usize {
        self.basis.len()
    }

    /// Global moment id for a dense local exponent tuple.
    pub fn moment_id(&self, exps: &[u32]) -> Option<usize> {
        self.basis.index_of(exps).map(|i| self.offset + i)
    }
}

/// A single scalar equality `sum_k coeff_k * y_{col_k} = rhs` over the
/// global moment vector.
#[derive(Debug, Clone)]
pub struct LinearRow {
    /// Diagnostic label describing which constraint family produced the row.
    pub label: String,
    /// `(global moment id, coefficient)` pairs, sorted by id, no duplicates.
    pub terms: Vec<(usize, f64)>,
    pub rhs: f64,
}

/// A symmetric matrix of linear forms in the moments, constrained to be
/// positive semidefinite: `M(y)[i][j] = sum_k coeff_k * y_{col_k}`.
///
/// Only the upper triangle (`i <= j`) is stored; the matrix is symmetric
/// by construction.
#[derive(Debug, Clone)]
pub struct PsdBlock {
    /// Diagnostic name, e.g. `"moment(mu0)"` or `"localizing(occ[stable], g2)"`.
    pub name: String,
    /// Matrix side length.
    pub side: usize,
    /// Upper-triangle entries in row-major `(i, j)` order with `i <= j`;
    /// each entry's linear form is sorted by moment id.
    pub entries: Vec<((usize, usize), Vec<(usize, f64)>)>,
}

/// A fully assembled moment relaxation: maximize `objective . y` subject
/// to the linear rows and the positive semidefiniteness of every block.
#[derive(Debug, Clone)]
pub struct MomentRelaxation {
    /// Relaxation order `d`.
    pub order: u32,
    /// Total number of global moment variables.
    pub num_moments: usize,
    /// Measures in declaration order; offsets partition `0..num_moments`.
    pub measures: Vec<MeasureDecl>,
    /// Equality rows.
    pub rows: Vec<LinearRow>,
    /// Positive-semidefinite blocks (moment and localizing matrices).
    pub blocks: Vec<PsdBlock>,
    /// Objective to *maximize*, as sparse `(moment id, coefficient)` pairs.
    pub objective: Vec<(usize, f64)>,
    /// Non-fatal assembly notes, e.g. localizing matrices skipped because
    /// a support constraint's degree exceeds `2d`.
    pub warnings: Vec<String>,
}

impl MomentRelaxation {
    /// `(block name, side)` for every PSD block, in assembly order.
    pub fn block_sides(&self) -> Vec<(String, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.name.clone(), b.side))
            .collect()
    }

    /// Side length of the largest PSD block. This is the quantity that
    /// dominates interior-point memory and is what structured assembly
    /// exists to shrink.
    pub fn largest_block_side(&self) -> usize {
        self.blocks.iter().map(|b| b.side).max().unwrap_or(0)
    }

    /// The measure owning a global moment id, with the local basis index.
    pub fn locate_moment(&self, id: usize) -> Option<(&MeasureDecl, usize)> {
        self.measures
            .iter()
            .find(|m| id >= m.offset && id < m.offset + m.num_moments())
            .map(|m| (m, id - m.offset))
    }

    /// Human-readable label for a global moment id, for diagnostics.
    pub fn moment_label(&self, id: usize) -> String {
        match self.locate_moment(id) {
            None => format!("y[{id}]"),
            Some((m, local)) => {
                let exps = m.basis.exponents(local);
                let mono: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|&(_, &k)| k > 0)
                    .map(|(v, &k)| {
                        let name = &m.var_names[v];
                        if k == 1 {
                            name.clone()
                        } else {
                            format!("{name}^{k}")
                        }
                    })
                    .collect();
                let mono = if mono.is_empty() {
                    "1".to_string()
                } else {
                    mono.join("*")
                };
                format!("<{}, {}>", m.name, mono)
            }
        }
    }
}
