//! Assembly of the moment relaxation from a [`ValidationProblem`].
//!
//! # Formulation
//!
//! For a piecewise system with cells `f_j` on guards `G_j`, terminal cost
//! `h`, horizon normalized to `[0, 1]`, and initial set `X_0`, the
//! occupation-measure program bounds the worst-case terminal cost by
//!
//! ```text
//!   maximize   <mu_T, h>
//!   subject to <mu_T, v(1,.)> - <mu_0, v(0,.)>
//!                = sum_j <mu_j, dv/ds + grad_x v . f_j>   for all test v,
//!              <mu_0, 1> = 1,   all measures supported on their sets.
//! ```
//!
//! Truncating at relaxation order `d` replaces each measure by its moments
//! of degree `<= 2d`, constrained by moment- and localizing-matrix
//! positive semidefiniteness, and replaces "all test `v`" by all monomials
//! `v` in time and the cluster states with
//!
//! ```text
//!   deg v <= clamp(2d + 1 - deg f, 0, 2d),
//! ```
//!
//! so that every integrand `dv/ds + grad v . f` stays within the truncated
//! moment range.
//!
//! # Structured (clustered) assembly
//!
//! When the problem carries a [`ReferenceBlock`], the sparse path keeps the
//! plant cluster and reference cluster as separate measure families and
//! couples them only through *marginal rows*: for every monomial `m(s, w)`
//! in time and the coupled variables of degree `<= 2d`,
//!
//! ```text
//!   sum_j <mu_j, m(s, w)> = <nu, m(s, E(x_r))>,
//! ```
//!
//! where `E` maps reference states to the coupled outputs `w`. The coupled
//! variables carry their own in-cluster generator (validated to be the
//! exact pushforward of the reference flow), so the plant-side transport
//! rows probe them directly; the marginal rows additionally import the
//! reference cluster's higher-resolution view of the same signal, since the
//! reference field is low degree and its test basis therefore extends to
//! higher order than the plant cluster's. The dense path instead
//! substitutes `w = E(x_r)` and assembles one joint cluster, which is what
//! the structured path is measured against.
//!
//! [`ReferenceBlock`]: crate::ir::ReferenceBlock

use std::collections::BTreeMap;

use polyalg::{Monomial, MonomialBasis, Polynomial};

use crate::ir::{PiecewiseSystem, ReferenceBlock, SemialgebraicSet, ValidationProblem};
use crate::relaxation::{LinearRow, MeasureDecl, MomentRelaxation, PsdBlock};
use crate::LiouvilleError;

/// Which relaxation shape to assemble for a problem with a reference block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    /// One joint cluster: coupled outputs are substituted into the plant.
    Dense,
    /// Plant and reference clusters kept separate, coupled by marginal rows.
    Sparse,
}

/// Assemble the order-`d` moment relaxation of `prob`.
///
/// `Structure::Sparse` requires a reference block; `Structure::Dense`
/// merges the reference block into a joint cluster when one is present.
pub fn assemble_relaxation(
    prob: &ValidationProblem,
    order: u32,
    structure: Structure,
) -> Result<MomentRelaxation, LiouvilleError> {
    prob.validate()?;
    if order == 0 {
        return Err(LiouvilleError::InvalidProblem(
            "relaxation order must be at least 1".into(),
        ));
    }
    match (structure, &prob.reference) {
        (Structure::Sparse, None) => Err(LiouvilleError::InvalidProblem(
            "structured assembly requires a reference block".into(),
        )),
        (Structure::Sparse, Some(_)) => assemble_sparse(prob, order),
        (Structure::Dense, Some(_)) => assemble_dense(&merge_reference(prob)?, order),
        (Structure::Dense, None) => assemble_dense(prob, order),
    }
}

/// Rewrite a problem with a reference block as an equivalent joint-cluster
/// problem: reference variables replace the coupled trailing plant
/// variables, every occurrence of a coupled variable is substituted by its
/// coupled-output map, the coupled generator rows are dropped (the
/// reference field carries that flow), and the reference's deterministic
/// start becomes initial-measure pins.
pub fn merge_reference(prob: &ValidationProblem) -> Result<ValidationProblem, LiouvilleError> {
    prob.validate()?;
    let r = prob.reference.as_ref().ok_or_else(|| {
        LiouvilleError::InvalidProblem("cannot merge: problem has no reference block".into())
    })?;
    let m = r.coupled_outputs.len();
    let nkeep = prob.system.nvars - m;
    let n_merged = nkeep + r.nvars;
    let universe: Vec<usize> = (0..n_merged).collect();

    // Map coupled plant variable (nkeep + k) to its coupled output written
    // over the shifted reference ids (nkeep..nkeep + r.nvars).
    let mut subst: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for k in 0..m {
        subst.insert(nkeep + k, shift_vars(&r.coupled_outputs[k], nkeep, n_merged)?);
    }
    let rewrite = |p: &Polynomial| -> Result<Polynomial, LiouvilleError> {
        Ok(p.substitute(&subst, universe.clone())?)
    };

    let mut cells = Vec::with_capacity(prob.system.cells.len());
    for cell in &prob.system.cells {
        let mut field = Vec::with_capacity(n_merged);
        for f in &cell.field[..nkeep] {
            field.push(rewrite(f)?);
        }
        for f in &r.field {
            field.push(shift_vars(f, nkeep, n_merged)?);
        }
        let guard = cell
            .guard
            .iter()
            .map(&rewrite)
            .collect::<Result<Vec<_>, _>>()?;
        cells.push(crate::ir::Cell {
            name: cell.name.clone(),
            guard,
            field,
        });
    }

    // Keep plant box constraints that avoid the coupled variables.
    // Dropping a coupled-variable support constraint only enlarges the
    // support (never lowers the bound); the reference box carries the
    // effective support for those directions through the output maps.
    let mut box_ineqs = Vec::new();
    for g in &prob.x_box.inequalities {
        if max_var(g).map_or(true, |v| v < nkeep) {
            box_ineqs.push(resize_universe(g, n_merged)?);
        }
    }
    for g in &r.x_box.inequalities {
        box_ineqs.push(shift_vars(g, nkeep, n_merged)?);
    }

    // Pins on coupled variables must agree with the image of the reference
    // start; they are then subsumed by the reference pins.
    let mut pins = Vec::new();
    for &(v, val) in &prob.x0_pins {
        if v < nkeep {
            pins.push((v, val));
        } else {
            let image = r.coupled_outputs[v - nkeep].evaluate_dense(&r.initial_point);
            if (image - val).abs() > 1e-12 * (1.0 + val.abs()) {
                return Err(LiouvilleError::InvalidProblem(format!(
                    "pin on coupled variable {v} (value {val}) contradicts \
                     the reference start image {image}"
                )));
            }
        }
    }
    for (k, &val) in r.initial_point.iter().enumerate() {
        pins.push((nkeep + k, val));
    }

    let mut names: Vec<String> = prob.state_names[..nkeep].to_vec();
    names.extend(r.var_names.iter().cloned());

    Ok(ValidationProblem {
        system: PiecewiseSystem {
            nvars: n_merged,
            cells,
        },
        state_names: names,
        x0: SemialgebraicSet::new(
            prob.x0
                .inequalities
                .iter()
                .map(&rewrite)
                .collect::<Result<Vec<_>, _>>()?,
        ),
        x0_pins: pins,
        x_box: SemialgebraicSet::new(box_ineqs),
        terminal_cost: rewrite(&prob.terminal_cost)?,
        reference: None,
    })
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

struct Builder {
    order: u32,
    measures: Vec<MeasureDecl>,
    /// Support inequalities per measure, in the measure's local universe.
    supports: Vec<Vec<Polynomial>>,
    rows: Vec<LinearRow>,
    objective: Vec<(usize, f64)>,
    warnings: Vec<String>,
    next_offset: usize,
}

impl Builder {
    fn new(order: u32) -> Self {
        Self {
            order,
            measures: Vec::new(),
            supports: Vec::new(),
            rows: Vec::new(),
            objective: Vec::new(),
            warnings: Vec::new(),
            next_offset: 0,
        }
    }

    /// Declare a measure over `var_names.len()` local variables and record
    /// its support inequalities (local universe).
    fn add_measure(
        &mut self,
        name: &str,
        var_names: Vec<String>,
        support: Vec<Polynomial>,
    ) -> usize {
        let nv = var_names.len();
        let basis = MonomialBasis::new((0..nv).collect(), 2 * self.order);
        let decl = MeasureDecl {
            name: name.to_string(),
            var_names,
            order: self.order,
            offset: self.next_offset,
            basis,
        };
        self.next_offset += decl.num_moments();
        self.measures.push(decl);
        self.supports.push(support);
        self.measures.len() - 1
    }

    /// Global moment id of `exps` under measure `m`, or an internal error if
    /// the exponent falls outside the truncated basis (an assembly bug).
    fn moment_id(&self, m: usize, exps: &[u32]) -> Result<usize, LiouvilleError> {
        self.measures[m].moment_id(exps).ok_or_else(|| {
            LiouvilleError::Internal(format!(
                "moment {exps:?} of degree {} exceeds truncation 2d={} for measure '{}'",
                exps.iter().sum::<u32>(),
                2 * self.order,
                self.measures[m].name
            ))
        })
    }

    /// Add `scale * p` (a polynomial over measure `m`'s local universe) to a
    /// row accumulator keyed by global moment id.
    fn accumulate(
        &self,
        acc: &mut BTreeMap<usize, f64>,
        m: usize,
        p: &Polynomial,
        scale: f64,
    ) -> Result<(), LiouvilleError> {
        let nv = self.measures[m].var_names.len();
        for (mono, c) in p.terms() {
            let id = self.moment_id(m, &mono.to_dense(nv))?;
            *acc.entry(id).or_insert(0.0) += scale * c;
        }
        Ok(())
    }

    fn push_row(&mut self, label: String, acc: BTreeMap<usize, f64>, rhs: f64) {
        let terms: Vec<(usize, f64)> = acc.into_iter().filter(|&(_, c)| c != 0.0).collect();
        self.rows.push(LinearRow { label, terms, rhs });
    }

    /// Emit the moment matrix and localizing matrices for every measure.
    fn build_blocks(&mut self) -> Result<Vec<PsdBlock>, LiouvilleError> {
        let d = self.order;
        let mut blocks = Vec::new();
        for (m, decl) in self.measures.iter().enumerate() {
            let nv = decl.var_names.len();
            let half = MonomialBasis::new((0..nv).collect(), d);
            let side = half.len();
            let mut entries = Vec::with_capacity(side * (side + 1) / 2);
            for i in 0..side {
                for j in i..side {
                    let sum = add_exps(half.exponents(i), half.exponents(j));
                    let id = self.moment_id(m, &sum)?;
                    entries.push(((i, j), vec![(id, 1.0)]));
                }
            }
            blocks.push(PsdBlock {
                name: format!("moment({})", decl.name),
                side,
                entries,
            });

            for (gi, g) in self.supports[m].iter().enumerate() {
                let degg = g.degree();
                if degg > 2 * d {
                    self.warnings.push(format!(
                        "measure '{}': skipping localizing matrix for support \
                         constraint #{gi} (degree {degg} exceeds 2d = {})",
                        decl.name,
                        2 * d
                    ));
                    continue;
                }
                let dg = d - degg.div_ceil(2);
                let gbasis = MonomialBasis::new((0..nv).collect(), dg);
                let gside = gbasis.len();
                let mut entries = Vec::with_capacity(gside * (gside + 1) / 2);
                for i in 0..gside {
                    for j in i..gside {
                        let base = add_exps(gbasis.exponents(i), gbasis.exponents(j));
                        let mut form: BTreeMap<usize, f64> = BTreeMap::new();
                        for (mono, c) in g.terms() {
                            let sum = add_exps(&base, &mono.to_dense(nv));
                            *form.entry(self.moment_id(m, &sum)?).or_insert(0.0) += c;
                        }
                        entries.push(((i, j), form.into_iter().collect()));
                    }
                }
                blocks.push(PsdBlock {
                    name: format!("localizing({}, g{gi})", decl.name),
                    side: gside,
                    entries,
                });
            }
        }
        Ok(blocks)
    }

    fn finish(mut self) -> Result<MomentRelaxation, LiouvilleError> {
        let blocks = self.build_blocks()?;
        Ok(MomentRelaxation {
            order: self.order,
            num_moments: self.next_offset,
            measures: self.measures,
            rows: self.rows,
            blocks,
            objective: self.objective,
            warnings: self.warnings,
        })
    }
}

// ---------------------------------------------------------------------------
// Dense assembly
// ---------------------------------------------------------------------------

fn assemble_dense(prob: &ValidationProblem, d: u32) -> Result<MomentRelaxation, LiouvilleError> {
    debug_assert!(prob.reference.is_none());
    let n = prob.system.nvars;
    let names = &prob.state_names;
    let mut b = Builder::new(d);

    let mu0 = b.add_measure("mu0", names.clone(), prob.x0.inequalities.clone());
    let mu_t = b.add_measure("muT", names.clone(), prob.x_box.inequalities.clone());
    let mut occ = Vec::new();
    for cell in &prob.system.cells {
        let mut support = vec![time_box(n + 1)];
        for g in &prob.x_box.inequalities {
            support.push(shift_vars(g, 1, n + 1)?);
        }
        for g in &cell.guard {
            support.push(shift_vars(g, 1, n + 1)?);
        }
        let mut vn = vec!["s".to_string()];
        vn.extend(names.iter().cloned());
        occ.push(b.add_measure(&format!("occ[{}]", cell.name), vn, support));
    }

    add_mass_row(&mut b, mu0);
    add_pin_rows(&mut b, mu0, &prob.x0_pins)?;
    add_plant_liouville_rows(&mut b, prob, mu0, mu_t, &occ, n)?;
    set_objective(&mut b, mu_t, &prob.terminal_cost, n)?;
    b.finish()
}

// ---------------------------------------------------------------------------
// Sparse (clustered) assembly
// ---------------------------------------------------------------------------

fn assemble_sparse(prob: &ValidationProblem, d: u32) -> Result<MomentRelaxation, LiouvilleError> {
    let r = prob.reference.as_ref().expect("checked by caller");
    let n = prob.system.nvars;
    let m = r.coupled_outputs.len();
    let rn = r.nvars;
    let mut b = Builder::new(d);

    let names = prob.state_names.clone();
    let mu0 = b.add_measure("mu0", names.clone(), prob.x0.inequalities.clone());
    let mu_t = b.add_measure("muT", names, prob.x_box.inequalities.clone());

    let mut occ = Vec::new();
    for cell in &prob.system.cells {
        let mut support = vec![time_box(n + 1)];
        for g in &prob.x_box.inequalities {
            support.push(shift_vars(g, 1, n + 1)?);
        }
        for g in &cell.guard {
            support.push(shift_vars(g, 1, n + 1)?);
        }
        let mut vn = vec!["s".to_string()];
        vn.extend(prob.state_names.iter().cloned());
        occ.push(b.add_measure(&format!("occ[{}]", cell.name), vn, support));
    }

    let mut nu_support = vec![time_box(rn + 1)];
    for g in &r.x_box.inequalities {
        nu_support.push(shift_vars(g, 1, rn + 1)?);
    }
    let mut nu_names = vec!["s".to_string()];
    nu_names.extend(r.var_names.iter().cloned());
    let nu = b.add_measure("nu", nu_names, nu_support);
    let nu_t = b.add_measure("nuT", r.var_names.clone(), r.x_box.inequalities.clone());

    add_mass_row(&mut b, mu0);
    add_pin_rows(&mut b, mu0, &prob.x0_pins)?;
    add_plant_liouville_rows(&mut b, prob, mu0, mu_t, &occ, n)?;
    add_reference_liouville_rows(&mut b, r, nu, nu_t)?;
    add_marginal_rows(&mut b, r, &occ, nu, n, m, rn)?;
    set_objective(&mut b, mu_t, &prob.terminal_cost, n)?;
    b.finish()
}

// ---------------------------------------------------------------------------
// Row families
// ---------------------------------------------------------------------------

fn add_mass_row(b: &mut Builder, mu0: usize) {
    let one = b.moment_id(mu0, &vec![0; b.measures[mu0].var_names.len()]);
    let id = one.expect("constant moment always in basis");
    b.push_row("mass(mu0)".into(), BTreeMap::from([(id, 1.0)]), 1.0);
}

/// Pin rows: for every basis moment of `mu0` touching a pinned coordinate,
/// relate it to the same moment with pinned powers removed:
/// `y_e = prod_v val_v^{e_v} * y_{e'}`. With the mass row this makes the
/// pinned coordinates exact Dirac directions of the initial measure.
fn add_pin_rows(
    b: &mut Builder,
    mu0: usize,
    pins: &[(usize, f64)],
) -> Result<(), LiouvilleError> {
    if pins.is_empty() {
        return Ok(());
    }
    let decl = &b.measures[mu0];
    let nv = decl.var_names.len();
    let mut pinned = vec![None; nv];
    for &(v, val) in pins {
        pinned[v] = Some(val);
    }
    let mut rows = Vec::new();
    for i in 0..decl.basis.len() {
        let e = decl.basis.exponents(i);
        if !e
            .iter()
            .enumerate()
            .any(|(v, &k)| k > 0 && pinned[v].is_some())
        {
            continue;
        }
        let mut stripped = e.to_vec();
        let mut val = 1.0;
        for (v, k) in stripped.iter_mut().enumerate() {
            if let Some(pv) = pinned[v] {
                val *= pv.powi(*k as i32);
                *k = 0;
            }
        }
        let lhs = decl.offset + i;
        let rhs_id = decl.moment_id(&stripped).expect("stripped stays in basis");
        let mut acc = BTreeMap::from([(lhs, 1.0)]);
        if val != 0.0 {
            *acc.entry(rhs_id).or_insert(0.0) += -val;
        }
        rows.push((format!("pin(mu0, {})", fmt_exps(e)), acc));
    }
    for (label, acc) in rows {
        b.push_row(label, acc, 0.0);
    }
    Ok(())
}

/// Liouville rows for the plant cluster: one row per test monomial in time
/// and all cluster variables, up to the truncation-compatible test degree.
fn add_plant_liouville_rows(
    b: &mut Builder,
    prob: &ValidationProblem,
    mu0: usize,
    mu_t: usize,
    occ: &[usize],
    n: usize,
) -> Result<(), LiouvilleError> {
    let d = b.order;
    let degf = prob.system.field_degree();
    let vdeg = test_degree(d, degf);

    // Shift each cell's field components into the (time, states) universe.
    let mut fields = Vec::with_capacity(occ.len());
    for cell in &prob.system.cells {
        let f: Vec<Polynomial> = cell
            .field
            .iter()
            .map(|p| shift_vars(p, 1, n + 1))
            .collect::<Result<_, _>>()?;
        fields.push(f);
    }

    let test_basis = MonomialBasis::new((0..=n).collect(), vdeg);
    for t in 0..test_basis.len() {
        let e = test_basis.exponents(t); // (s, states...) exponents
        let v = test_monomial_poly(e, n + 1);
        let mut acc = BTreeMap::new();

        // <muT, v(1, .)> - <mu0, v(0, .)>
        let end_exps = &e[1..];
        acc.insert(b.moment_id(mu_t, end_exps)?, 1.0);
        if e[0] == 0 {
            *acc.entry(b.moment_id(mu0, end_exps)?).or_insert(0.0) += -1.0;
        }

        // - sum_j <mu_j, dv/ds + grad v . f_j>
        for (j, f) in fields.iter().enumerate() {
            let mut gen = v.differentiate(0);
            for (i, fi) in f.iter().enumerate() {
                let dv = v.differentiate(1 + i);
                if !dv.is_zero() {
                    gen = gen.add(&dv.mul(fi)?)?;
                }
            }
            b.accumulate(&mut acc, occ[j], &gen, -1.0)?;
        }
        b.push_row(format!("liouville(plant, {})", fmt_exps(e)), acc, 0.0);
    }
    Ok(())
}

/// Liouville rows for the autonomous reference cluster. Its initial measure
/// is the Dirac at `initial_point`, so `<nu0, v(0,.)>` is a concrete number
/// and lands on the right-hand side.
fn add_reference_liouville_rows(
    b: &mut Builder,
    r: &ReferenceBlock,
    nu: usize,
    nu_t: usize,
) -> Result<(), LiouvilleError> {
    let d = b.order;
    let rn = r.nvars;
    let degf = r.field.iter().map(|p| p.degree()).max().unwrap_or(0);
    let vdeg = test_degree(d, degf);

    let field: Vec<Polynomial> = r
        .field
        .iter()
        .map(|p| shift_vars(p, 1, rn + 1))
        .collect::<Result<_, _>>()?;

    let test_basis = MonomialBasis::new((0..=rn).collect(), vdeg);
    for t in 0..test_basis.len() {
        let e = test_basis.exponents(t);
        let v = test_monomial_poly(e, rn + 1);
        let mut acc = BTreeMap::new();

        acc.insert(b.moment_id(nu_t, &e[1..])?, 1.0);
        // v(0, x_r) evaluated at the Dirac initial point.
        let rhs = if e[0] == 0 {
            e[1..]
                .iter()
                .enumerate()
                .map(|(k, &p)| r.initial_point[k].powi(p as i32))
                .product()
        } else {
            0.0
        };

        let mut gen = v.differentiate(0);
        for (i, fi) in field.iter().enumerate() {
            let dv = v.differentiate(1 + i);
            if !dv.is_zero() {
                gen = gen.add(&dv.mul(fi)?)?;
            }
        }
        b.accumulate(&mut acc, nu, &gen, -1.0)?;
        b.push_row(format!("liouville(reference, {})", fmt_exps(e)), acc, rhs);
    }
    Ok(())
}

/// Marginal rows coupling the plant cluster's trailing coupled variables to
/// the reference cluster: for every monomial `m(s, w)` with integrands
/// inside the truncation, `sum_j <mu_j, m(s, w)> = <nu, m(s, E(x_r))>`.
fn add_marginal_rows(
    b: &mut Builder,
    r: &ReferenceBlock,
    occ: &[usize],
    nu: usize,
    n: usize,
    m: usize,
    rn: usize,
) -> Result<(), LiouvilleError> {
    let d = b.order;
    let nkeep = n - m;
    let emaps: Vec<Polynomial> = r
        .coupled_outputs
        .iter()
        .map(|p| shift_vars(p, 1, rn + 1))
        .collect::<Result<_, _>>()?;
    let emap_degs: Vec<u32> = emaps.iter().map(|p| p.degree().max(1)).collect();

    let marg_basis = MonomialBasis::new((0..=m).collect(), 2 * d);
    for t in 0..marg_basis.len() {
        let e = marg_basis.exponents(t); // (s, w_1..w_m) exponents
        // Degree of the reference-side integrand s^ks * prod E_k^{w_k}.
        let nu_deg: u32 = e[0] + e[1..]
            .iter()
            .zip(&emap_degs)
            .map(|(&k, &dg)| k * dg)
            .sum::<u32>();
        if nu_deg > 2 * d {
            continue;
        }

        let mut acc = BTreeMap::new();
        // Plant side: the same monomial on every occupation cell.
        let mut mu_exps = vec![0u32; n + 1];
        mu_exps[0] = e[0];
        for k in 0..m {
            mu_exps[1 + nkeep + k] = e[1 + k];
        }
        for &cell in occ {
            *acc.entry(b.moment_id(cell, &mu_exps)?).or_insert(0.0) += 1.0;
        }

        // Reference side: s^ks * prod E_k(x_r)^{w_k} under nu.
        let mut integrand = Polynomial::from_terms(
            [(Monomial::var_pow(0, e[0]), 1.0)],
            (0..=rn).collect(),
        )?;
        for (k, em) in emaps.iter().enumerate() {
            for _ in 0..e[1 + k] {
                integrand = integrand.mul(em)?;
            }
        }
        b.accumulate(&mut acc, nu, &integrand, -1.0)?;
        b.push_row(format!("marginal({})", fmt_exps(e)), acc, 0.0);
    }
    Ok(())
}

fn set_objective(
    b: &mut Builder,
    mu_t: usize,
    cost: &Polynomial,
    nv: usize,
) -> Result<(), LiouvilleError> {
    if cost.degree() > 2 * b.order {
        return Err(LiouvilleError::InvalidProblem(format!(
            "terminal cost degree {} exceeds moment truncation 2d = {}",
            cost.degree(),
            2 * b.order
        )));
    }
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    for (mono, c) in cost.terms() {
        *acc.entry(b.moment_id(mu_t, &mono.to_dense(nv))?).or_insert(0.0) += c;
    }
    b.objective = acc.into_iter().collect();
    Ok(())
}

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

/// Test-function degree cap `clamp(2d + 1 - deg f, 0, 2d)`.
fn test_degree(d: u32, degf: u32) -> u32 {
    let raw = 2 * d as i64 + 1 - degf as i64;
    raw.clamp(0, 2 * d as i64) as u32
}

/// `s * (1 - s)` over the first variable of an `nvars` universe.
fn time_box(nvars: usize) -> Polynomial {
    let s = Polynomial::var_in(0, nvars);
    let one = Polynomial::constant_in(1.0, nvars);
    s.mul(&one.sub(&s).expect("same universe"))
        .expect("same universe")
}

/// Remap every variable `v -> v + by` into a universe of size `new_nvars`.
fn shift_vars(p: &Polynomial, by: usize, new_nvars: usize) -> Result<Polynomial, LiouvilleError> {
    let terms = p
        .terms()
        .map(|(m, c)| {
            (
                Monomial::from_pairs(m.iter().map(|(v, k)| (v + by, k))),
                c,
            )
        })
        .collect::<Vec<_>>();
    Ok(Polynomial::from_terms(terms, (0..new_nvars).collect())?)
}

/// Reinterpret `p` in a universe of size `new_nvars` without renaming.
fn resize_universe(p: &Polynomial, new_nvars: usize) -> Result<Polynomial, LiouvilleError> {
    shift_vars(p, 0, new_nvars)
}

/// The monomial with dense cluster exponents `e` as a polynomial.
fn test_monomial_poly(e: &[u32], nvars: usize) -> Polynomial {
    let mut padded = e.to_vec();
    padded.resize(nvars, 0);
    Polynomial::from_terms(
        [(Monomial::from_dense(&padded), 1.0)],
        (0..nvars).collect(),
    )
    .expect("exponents within universe")
}

fn max_var(p: &Polynomial) -> Option<usize> {
    p.terms().filter_map(|(m, _)| m.max_var()).max()
}

fn add_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn fmt_exps(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(|k| k.to_string()).collect();
    parts.join(",")
}
