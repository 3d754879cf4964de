//! Exact projection of polyhedra onto variable subsets.
//!
//! Variables are eliminated one at a time: through Gaussian substitution when
//! an equality row carries the variable, through Fourier-Motzkin combination
//! otherwise. Rows are renormalized, deduplicated, and LP-pruned after each
//! combination step; without the pruning the row count doubles per step and
//! the larger model families become intractable.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, Emptiness};
use crate::map::AffineMapSpec;
use crate::polyhedron::{canonical_hpoly, HPoly, Sense};
use crate::rational::{primitive, RatVector, Rational};

/// Exact projection outcome. The two degenerate kinds are kept distinct from
/// a proper polyhedron: a projection with no surviving constraints is the
/// whole space, and a projection of an empty polyhedron is empty (with a
/// Farkas witness on the input rows).
#[derive(Clone, Debug)]
pub enum ProjectionResult {
    Polytope(HPoly),
    FullSpace(usize),
    Empty(RatVector),
}

impl ProjectionResult {
    pub fn as_polytope(&self) -> Option<&HPoly> {
        match self {
            ProjectionResult::Polytope(h) => Some(h),
            _ => None,
        }
    }

    pub fn is_full_space(&self) -> bool {
        matches!(self, ProjectionResult::FullSpace(_))
    }

    pub fn describe(&self) -> String {
        match self {
            ProjectionResult::Polytope(h) => {
                format!("polyhedron with {} rows over {} variables", h.num_rows(), h.dim())
            }
            ProjectionResult::FullSpace(d) => format!("FullSpace({d})"),
            ProjectionResult::Empty(_) => "Empty".to_string(),
        }
    }
}

/// Projects onto the variables of the given classes.
pub fn project_onto_classes(p: &HPoly, classes: &[&str]) -> Result<ProjectionResult> {
    let columns: BTreeSet<usize> = p.space().columns_of_classes(classes)?.into_iter().collect();
    project_onto_columns(p, &columns)
}

/// Projects onto the given columns of the variable space.
pub fn project_onto_columns(p: &HPoly, keep: &BTreeSet<usize>) -> Result<ProjectionResult> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    if let Some(&max) = keep.iter().max() {
        if max >= p.dim() {
            return Err(Error::DimensionMismatch(format!(
                "kept column {max} exceeds the {}-variable space",
                p.dim()
            )));
        }
    }
    if let Emptiness::Empty { witness } = lp::is_empty(p) {
        return Ok(ProjectionResult::Empty(witness));
    }

    let mut columns: Vec<usize> = (0..p.dim()).collect();
    let mut rows: Vec<(RatVector, Sense, Rational)> =
        p.rows().map(|(r, s, b)| (r.to_vec(), s, b.clone())).collect();
    cleanup(&mut rows);

    while let Some(pos) = pick_elimination(&rows, &columns, keep) {
        let by_equality = eliminate(&mut rows, pos);
        columns.remove(pos);
        cleanup(&mut rows);
        if !by_equality {
            lp_prune(&mut rows, &columns, p)?;
        }
    }

    debug_assert!(columns.iter().all(|c| keep.contains(c)));
    let space = p.space().select(&columns);
    if rows.is_empty() {
        return Ok(ProjectionResult::FullSpace(space.dim()));
    }
    Ok(ProjectionResult::Polytope(canonical_hpoly(space, rows)?))
}

/// Position of the next column to eliminate: equality substitutions first,
/// then the smallest Fourier-Motzkin product, ties by column order.
fn pick_elimination(
    rows: &[(RatVector, Sense, Rational)],
    columns: &[usize],
    keep: &BTreeSet<usize>,
) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None; // (cost, position)
    for (j, col) in columns.iter().enumerate() {
        if keep.contains(col) {
            continue;
        }
        let has_eq = rows.iter().any(|(r, s, _)| *s == Sense::Eq && !r[j].is_zero());
        let cost = if has_eq {
            0
        } else {
            let pos = rows.iter().filter(|(r, _, _)| r[j].is_positive()).count();
            let neg = rows.iter().filter(|(r, _, _)| r[j].is_negative()).count();
            pos * neg
        };
        if best.as_ref().is_none_or(|&(c, _)| cost < c) {
            best = Some((cost, j));
        }
    }
    best.map(|(_, j)| j)
}

/// Eliminates the variable at `pos`; returns true when an equality
/// substitution was used (no row growth).
fn eliminate(rows: &mut Vec<(RatVector, Sense, Rational)>, pos: usize) -> bool {
    let pivot = rows
        .iter()
        .position(|(r, s, _)| *s == Sense::Eq && !r[pos].is_zero());
    if let Some(pi) = pivot {
        let (pr, _, pb) = rows[pi].clone();
        let inv = pr[pos].clone().recip();
        for (i, (r, _, b)) in rows.iter_mut().enumerate() {
            if i == pi || r[pos].is_zero() {
                continue;
            }
            let factor = -(&r[pos] * &inv);
            crate::rational::add_scaled(r, &factor, &pr);
            *b += &factor * &pb;
        }
        rows.remove(pi);
        for (r, _, _) in rows.iter_mut() {
            r.remove(pos);
        }
        return true;
    }

    let mut kept: Vec<(RatVector, Sense, Rational)> = Vec::new();
    let mut pos_rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    let mut neg_rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    for row in rows.drain(..) {
        if row.0[pos].is_zero() {
            kept.push(row);
        } else if row.0[pos].is_positive() {
            pos_rows.push(row);
        } else {
            neg_rows.push(row);
        }
    }
    for (pr, _, pb) in &pos_rows {
        for (nr, _, nb) in &neg_rows {
            // Positive multiples cancel the eliminated coefficient:
            // (-a_n) * positive-row + a_p * negative-row.
            let lam = -&nr[pos];
            let mu = pr[pos].clone();
            let mut coeffs: RatVector = pr.iter().map(|c| &lam * c).collect();
            crate::rational::add_scaled(&mut coeffs, &mu, nr);
            debug_assert!(coeffs[pos].is_zero());
            let rhs = &lam * pb + &mu * nb;
            kept.push((coeffs, Sense::Le, rhs));
        }
    }
    for (r, _, _) in kept.iter_mut() {
        r.remove(pos);
    }
    *rows = kept;
    false
}

/// Cheap syntactic cleanup: primitive rescaling, trivial-row removal, exact
/// duplicates, and same-normal dominance.
fn cleanup(rows: &mut Vec<(RatVector, Sense, Rational)>) {
    use std::collections::BTreeMap;
    let mut eq_best: BTreeMap<RatVector, Rational> = BTreeMap::new();
    let mut le_best: BTreeMap<RatVector, Rational> = BTreeMap::new();
    let mut order: Vec<(RatVector, Sense)> = Vec::new();
    for (coeffs, sense, rhs) in rows.drain(..) {
        if crate::rational::is_zero_vec(&coeffs) {
            debug_assert!(
                match sense {
                    Sense::Le => !rhs.is_negative(),
                    Sense::Eq => rhs.is_zero(),
                },
                "trivially false row in a non-empty system"
            );
            continue;
        }
        let (norm, scaled_rhs) = scale_to_primitive(&coeffs, &rhs);
        match sense {
            Sense::Eq => match eq_best.get(&norm) {
                Some(existing) => {
                    debug_assert_eq!(
                        existing, &scaled_rhs,
                        "conflicting equality rows in a non-empty system"
                    );
                }
                None => {
                    eq_best.insert(norm.clone(), scaled_rhs);
                    order.push((norm, Sense::Eq));
                }
            },
            Sense::Le => match le_best.get_mut(&norm) {
                Some(best) => {
                    if scaled_rhs < *best {
                        *best = scaled_rhs;
                    }
                }
                None => {
                    le_best.insert(norm.clone(), scaled_rhs);
                    order.push((norm, Sense::Le));
                }
            },
        }
    }
    for (norm, sense) in order {
        match sense {
            Sense::Eq => {
                let rhs = eq_best[&norm].clone();
                // An equality on the same normal dominates any <= row on it.
                if let Some(le) = le_best.get(&norm) {
                    debug_assert!(rhs <= *le, "equality contradicts a <= row in a non-empty system");
                    le_best.remove(&norm);
                }
                rows.push((norm, Sense::Eq, rhs));
            }
            Sense::Le => {
                if let Some(rhs) = le_best.remove(&norm) {
                    rows.push((norm, Sense::Le, rhs));
                }
            }
        }
    }
}

/// Rescales by a positive factor so the coefficients are primitive integers;
/// the rhs is scaled along.
fn scale_to_primitive(coeffs: &[Rational], rhs: &Rational) -> (RatVector, Rational) {
    let norm = primitive(coeffs);
    let i0 = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero row");
    let scale = &norm[i0] / &coeffs[i0];
    debug_assert!(scale.is_positive());
    (norm, rhs * scale)
}

/// Full row-redundancy pruning via the LP test, applied to the intermediate
/// system after a Fourier-Motzkin combination step.
fn lp_prune(
    rows: &mut Vec<(RatVector, Sense, Rational)>,
    columns: &[usize],
    original: &HPoly,
) -> Result<()> {
    if rows.len() <= 1 {
        return Ok(());
    }
    let space = original.space().select(columns);
    let current = HPoly::from_rows(space, rows.clone())?;
    let pruned = crate::redundancy::remove_row_redundancy(&current)?;
    *rows = pruned.rows().map(|(r, s, b)| (r.to_vec(), s, b.clone())).collect();
    Ok(())
}

/// Shortcut for candidates whose coefficient block on the first `x_dim`
/// variables is identically zero: the projection onto those variables is the
/// whole space when the remaining system is feasible and empty (with a
/// Farkas witness) otherwise. Errors when the block is not zero; the general
/// projection applies then.
pub fn project_degenerate_case(u: &HPoly, x_dim: usize) -> Result<ProjectionResult> {
    if x_dim == 0 || x_dim > u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "kept block of {x_dim} variables in a {}-variable space",
            u.dim()
        )));
    }
    for (row, _, _) in u.rows() {
        if row[..x_dim].iter().any(|c| !c.is_zero()) {
            return Err(Error::NonzeroKeptBlock);
        }
    }
    let tail: Vec<usize> = (x_dim..u.dim()).collect();
    let w_space = u.space().select(&tail);
    let w_rows = u
        .rows()
        .map(|(r, s, b)| (r[x_dim..].to_vec(), s, b.clone()))
        .collect();
    let w_system = HPoly::from_rows(w_space, w_rows)?;
    match lp::is_empty(&w_system) {
        Emptiness::Empty { witness } => Ok(ProjectionResult::Empty(witness)),
        Emptiness::NonEmpty { .. } => Ok(ProjectionResult::FullSpace(x_dim)),
    }
}

/// Rewrites the objective `alpha . x` through the graph `x = C y + b` as
/// `(C^T alpha) . y` plus the constant `alpha . b`. The matrix must be
/// entrywise nonnegative; this operation refuses otherwise.
pub fn pushforward_objective(
    alpha: &[Rational],
    map: &AffineMapSpec,
) -> Result<(RatVector, Rational)> {
    if alpha.len() != map.codomain.dim() {
        return Err(Error::DimensionMismatch(format!(
            "objective has length {} but the map codomain has {} variables",
            alpha.len(),
            map.codomain.dim()
        )));
    }
    if let Some((i, j)) = map.first_negative_entry() {
        return Err(Error::NegativeMapEntry(i, j));
    }
    let pushed = map.matrix.transpose().mul_vec(alpha)?;
    let constant = crate::rational::dot(alpha, &map.offset);
    Ok((pushed, constant))
}
