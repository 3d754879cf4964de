//! Row- and column-redundancy: constraints whose removal changes nothing,
//! and variable classes whose vertex coordinates are an affine function of
//! the rest.


use crate::error::{Error, Result};
use crate::lp::{self, RowOptimum};
use crate::map::AffineMapSpec;
use crate::matrix::{solve_linear, RatMatrix};
use crate::polyhedron::{enumerate_vertices, hull, is_bounded, Boundedness, HPoly, Sense, VPoly};
use crate::rational::{int, RatVector};

/// Summary of both redundancy notions for one polyhedron. `minimal` holds
/// exactly when both lists are empty.
#[derive(Clone, Debug)]
pub struct RedundancyReport {
    pub redundant_rows: Vec<usize>,
    pub redundant_classes: Vec<(String, AffineMapSpec)>,
    pub minimal: bool,
}

/// Is the row implied by the rest of the system? Decided by maximizing the
/// row functional over the system without it; equality rows are tested in
/// both directions. Requires a non-empty polyhedron.
pub fn row_redundant(p: &HPoly, row: usize) -> Result<bool> {
    if lp::is_empty(p).is_empty() {
        return Err(Error::EmptyPolyhedron("row_redundant"));
    }
    row_redundant_unchecked(p, row)
}

fn row_redundant_unchecked(p: &HPoly, row: usize) -> Result<bool> {
    let rest = p.without_row(row);
    let coeffs = p.row(row).to_vec();
    let rhs = p.rhs(row);
    let upper_ok = match lp::maximize(&rest, &coeffs)? {
        RowOptimum::Value { optimum, .. } => &optimum <= rhs,
        RowOptimum::Unbounded { .. } => false,
        RowOptimum::Infeasible { .. } => {
            return Err(Error::Internal("subsystem of a non-empty system is empty".into()))
        }
    };
    if !upper_ok {
        return Ok(false);
    }
    if p.sense(row) == Sense::Eq {
        let lower_ok = match lp::minimize(&rest, &coeffs)? {
            RowOptimum::Value { optimum, .. } => &optimum >= rhs,
            RowOptimum::Unbounded { .. } => false,
            RowOptimum::Infeasible { .. } => {
                return Err(Error::Internal("subsystem of a non-empty system is empty".into()))
            }
        };
        return Ok(lower_ok);
    }
    Ok(true)
}

/// Removes redundant rows in ascending index order, re-testing against the
/// shrinking system. The output has no redundant rows and describes the same
/// set. Empty polyhedra pass through unchanged.
pub fn remove_row_redundancy(p: &HPoly) -> Result<HPoly> {
    if lp::is_empty(p).is_empty() {
        return Ok(p.clone());
    }
    let mut current = p.clone();
    let mut i = 0;
    while i < current.num_rows() {
        if row_redundant_unchecked(&current, i)? {
            current = current.without_row(i);
        } else {
            i += 1;
        }
    }
    Ok(current)
}

/// Checks whether the coordinates of `drop_class` are an affine function of
/// the remaining coordinates across the vertex set. On success returns the
/// reconstruction map together with the reduced polytope on the kept
/// variables; the two-way extreme-point correspondence holds by construction
/// (an affine image of a convex combination is the convex combination of the
/// images). Requires a bounded polyhedron.
pub fn column_redundant(
    p: &HPoly,
    drop_class: &str,
) -> Result<Option<(AffineMapSpec, HPoly)>> {
    if !p.space().has_class(drop_class) {
        return Err(Error::UnknownClass(drop_class.to_string()));
    }
    if lp::is_empty(p).is_empty() {
        return Err(Error::EmptyPolyhedron("column_redundant"));
    }
    if let Boundedness::Unbounded { ray } = is_bounded(p)? {
        return Err(Error::Unbounded { context: "column_redundant", ray });
    }
    let dropped: Vec<usize> = p.space().columns_of_classes(&[drop_class])?;
    let kept: Vec<usize> =
        (0..p.dim()).filter(|c| !dropped.contains(c)).collect();
    if kept.is_empty() {
        // Dropping every variable is the trivial partition, excluded.
        return Ok(None);
    }
    let vertices = enumerate_vertices(p)?;

    // Fit dropped = M kept + c over all vertices: one linear system per
    // dropped coordinate, unknowns (row of M, offset entry).
    let design: Vec<RatVector> = vertices
        .vertices()
        .iter()
        .map(|v| {
            let mut row: RatVector = kept.iter().map(|&c| v[c].clone()).collect();
            row.push(int(1));
            row
        })
        .collect();
    let design = RatMatrix::from_rows(&design)?;
    let mut matrix_rows: Vec<RatVector> = Vec::with_capacity(dropped.len());
    let mut offset: RatVector = Vec::with_capacity(dropped.len());
    for &d in &dropped {
        let targets: RatVector =
            vertices.vertices().iter().map(|v| v[d].clone()).collect();
        match solve_linear(&design, &targets)? {
            Some(sol) => {
                let mut row = sol.particular;
                let c = row.pop().expect("offset unknown present");
                matrix_rows.push(row);
                offset.push(c);
            }
            None => return Ok(None),
        }
    }

    let kept_space = p.space().select(&kept);
    let dropped_space = p.space().select(&dropped);
    let reconstruction = AffineMapSpec::new(
        RatMatrix::from_rows(&matrix_rows)?,
        offset,
        kept_space.clone(),
        dropped_space,
    )?;
    let projected: Vec<RatVector> = vertices
        .vertices()
        .iter()
        .map(|v| kept.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let reduced = hull(&VPoly::new(kept_space, projected)?)?;
    Ok(Some((reconstruction, reduced)))
}

/// Definition-level report: per-row LP tests against the full system plus a
/// column test per class (bounded polytopes only; unbounded inputs report
/// rows only).
pub fn redundancy_report(p: &HPoly) -> Result<RedundancyReport> {
    let mut redundant_rows = Vec::new();
    for i in 0..p.num_rows() {
        if row_redundant(p, i)? {
            redundant_rows.push(i);
        }
    }
    let mut redundant_classes = Vec::new();
    let classes: Vec<String> =
        p.space().classes().into_iter().map(str::to_string).collect();
    if classes.len() > 1 && is_bounded(p)?.is_bounded() {
        for class in &classes {
            if let Some((map, _)) = column_redundant(p, class)? {
                redundant_classes.push((class.clone(), map));
            }
        }
    }
    let minimal = redundant_rows.is_empty() && redundant_classes.is_empty();
    Ok(RedundancyReport { redundant_rows, redundant_classes, minimal })
}
