//! H-representation and V-representation polyhedra over named variable
//! spaces, with exact conversions between the two.
//!
//! `enumerate_vertices` and `hull` are a Minkowski-Weyl pair: both reduce to
//! extreme-ray enumeration of a pointed cone (the homogenization for H-to-V,
//! the valid-inequality cone for V-to-H) after the affine hull has been
//! split off exactly.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::lp::{self, Emptiness, RowOptimum};
use crate::matrix::{invert, rref, solve_linear, RatMatrix};
use crate::rational::{dot, int, primitive, RatVector, Rational};
use crate::space::VarSpace;

/// Row sense of an H-representation constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

/// A polyhedron `{x : a_i . x <= b_i or = b_i}` over a named variable space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPoly {
    space: VarSpace,
    a: RatMatrix,
    b: RatVector,
    senses: Vec<Sense>,
}

impl HPoly {
    pub fn new(space: VarSpace, a: RatMatrix, b: RatVector, senses: Vec<Sense>) -> Result<Self> {
        if a.cols() != space.dim() {
            return Err(Error::DimensionMismatch(format!(
                "constraint matrix has {} columns but the space has {} variables",
                a.cols(),
                space.dim()
            )));
        }
        if a.rows() != b.len() || a.rows() != senses.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows, {} right-hand sides, {} senses",
                a.rows(),
                b.len(),
                senses.len()
            )));
        }
        Ok(Self { space, a, b, senses })
    }

    pub fn from_rows(space: VarSpace, rows: Vec<(RatVector, Sense, Rational)>) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(rows.len());
        let mut b = Vec::with_capacity(rows.len());
        let mut senses = Vec::with_capacity(rows.len());
        for (row, sense, rhs) in rows {
            coeffs.push(row);
            senses.push(sense);
            b.push(rhs);
        }
        let a = RatMatrix::from_rows(&coeffs)?;
        if coeffs.is_empty() {
            return Ok(Self { a: RatMatrix::zero(0, space.dim()), space, b, senses });
        }
        Self::new(space, a, b, senses)
    }

    /// The whole space: zero constraint rows.
    pub fn full(space: VarSpace) -> Self {
        let a = RatMatrix::zero(0, space.dim());
        Self { space, a, b: Vec::new(), senses: Vec::new() }
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        self.a.row(i)
    }

    pub fn rhs(&self, i: usize) -> &Rational {
        &self.b[i]
    }

    pub fn sense(&self, i: usize) -> Sense {
        self.senses[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[Rational], Sense, &Rational)> {
        (0..self.num_rows()).map(move |i| (self.row(i), self.sense(i), self.rhs(i)))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn rhs_vec(&self) -> &RatVector {
        &self.b
    }

    /// Exact membership test.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "point has length {} but the space has {} variables",
                x.len(),
                self.dim()
            )));
        }
        Ok(self.rows().all(|(row, sense, rhs)| {
            let v = dot(row, x);
            match sense {
                Sense::Le => &v <= rhs,
                Sense::Eq => &v == rhs,
            }
        }))
    }

    /// A copy without the given row; equality rows are removed whole.
    pub fn without_row(&self, drop: usize) -> Self {
        let rows = self
            .rows()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, (row, sense, rhs))| (row.to_vec(), sense, rhs.clone()))
            .collect();
        Self::from_rows(self.space.clone(), rows).expect("row subset keeps dimensions")
    }

    /// Restates the polyhedron over `target`, which must contain every
    /// variable of the current space; new variables get zero coefficients.
    pub fn embed_into(&self, target: &VarSpace) -> Result<Self> {
        let positions: Vec<usize> = self
            .space
            .vars()
            .iter()
            .map(|v| {
                target
                    .position(v)
                    .ok_or_else(|| Error::UnknownClass(format!("{v} missing from target space")))
            })
            .collect::<Result<_>>()?;
        let mut a = RatMatrix::zero(self.num_rows(), target.dim());
        for i in 0..self.num_rows() {
            for (j, &pos) in positions.iter().enumerate() {
                a[(i, pos)] = self.a[(i, j)].clone();
            }
        }
        HPoly::new(target.clone(), a, self.b.clone(), self.senses.clone())
    }
}

/// The convex hull of a finite point set over a named variable space.
/// May be empty (no points); exact duplicates are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPoly {
    space: VarSpace,
    vertices: Vec<RatVector>,
}

impl VPoly {
    pub fn new(space: VarSpace, vertices: Vec<RatVector>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(vertices.len());
        for v in vertices {
            if v.len() != space.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "vertex has length {} but the space has {} variables",
                    v.len(),
                    space.dim()
                )));
            }
            if seen.insert(v.clone()) {
                kept.push(v);
            }
        }
        Ok(Self { space, vertices: kept })
    }

    pub fn space(&self) -> &VarSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Membership in the convex hull, decided by an exact feasibility LP over
    /// the convex multipliers.
    pub fn contains_point(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "point has length {} but the space has {} variables",
                x.len(),
                self.dim()
            )));
        }
        if self.vertices.is_empty() {
            return Ok(false);
        }
        let k = self.vertices.len();
        let space = VarSpace::flat("lambda", k);
        let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
        for d in 0..self.dim() {
            let coeffs = self.vertices.iter().map(|v| v[d].clone()).collect();
            rows.push((coeffs, Sense::Eq, x[d].clone()));
        }
        rows.push((vec![int(1); k], Sense::Eq, int(1)));
        for j in 0..k {
            let mut row = vec![int(0); k];
            row[j] = int(-1);
            rows.push((row, Sense::Le, int(0)));
        }
        let system = HPoly::from_rows(space, rows)?;
        Ok(!lp::is_empty(&system).is_empty())
    }
}

/// Boundedness decision; carries a nonzero recession ray when unbounded.
#[derive(Clone, Debug)]
pub enum Boundedness {
    Bounded,
    Unbounded { ray: RatVector },
}

impl Boundedness {
    pub fn is_bounded(&self) -> bool {
        matches!(self, Boundedness::Bounded)
    }
}

/// Whether the recession cone `{d : A d <= 0, E d = 0}` is trivial.
/// Probes each coordinate direction at both signs with a feasibility LP.
/// Requires a non-empty polyhedron.
pub fn is_bounded(p: &HPoly) -> Result<Boundedness> {
    if lp::is_empty(p).is_empty() {
        return Err(Error::EmptyPolyhedron("is_bounded"));
    }
    let d = p.dim();
    for j in 0..d {
        for s in [1i64, -1] {
            let mut rows: Vec<(RatVector, Sense, Rational)> = p
                .rows()
                .map(|(row, sense, _)| (row.to_vec(), sense, int(0)))
                .collect();
            let mut probe = vec![int(0); d];
            probe[j] = int(1);
            rows.push((probe, Sense::Eq, int(s)));
            let cone_slice = HPoly::from_rows(p.space().clone(), rows)?;
            if let Emptiness::NonEmpty { point } = lp::is_empty(&cone_slice) {
                return Ok(Boundedness::Unbounded { ray: point });
            }
        }
    }
    Ok(Boundedness::Bounded)
}

/// Exact vertex set of a bounded H-polyhedron.
///
/// The equality rows are eliminated by substituting the affine hull, the
/// remainder is homogenized, and the extreme rays of the resulting pointed
/// cone are normalized back to points. Every returned point lies on
/// dimension-many linearly independent active constraints.
///
/// Errors with a recession-ray certificate if the input is unbounded.
/// An empty input yields an empty V-polyhedron.
pub fn enumerate_vertices(p: &HPoly) -> Result<VPoly> {
    if lp::is_empty(p).is_empty() {
        return VPoly::new(p.space().clone(), Vec::new());
    }
    if let Boundedness::Unbounded { ray } = is_bounded(p)? {
        return Err(Error::Unbounded { context: "enumerate_vertices", ray });
    }
    let d = p.dim();

    // Affine hull from the equality rows: x = x0 + N y.
    let eq_rows: Vec<RatVector> =
        p.rows().filter(|(_, s, _)| *s == Sense::Eq).map(|(r, _, _)| r.to_vec()).collect();
    let eq_rhs: RatVector =
        p.rows().filter(|(_, s, _)| *s == Sense::Eq).map(|(_, _, b)| b.clone()).collect();
    let (x0, null_basis) = if eq_rows.is_empty() {
        let identity: Vec<RatVector> = (0..d)
            .map(|j| {
                let mut e = vec![int(0); d];
                e[j] = int(1);
                e
            })
            .collect();
        (vec![int(0); d], identity)
    } else {
        let e = RatMatrix::from_rows(&eq_rows)?;
        let sol = solve_linear(&e, &eq_rhs)?
            .ok_or_else(|| Error::Internal("non-empty polyhedron with inconsistent equalities".into()))?;
        (sol.particular, sol.nullspace)
    };
    let k = null_basis.len();
    if k == 0 {
        return VPoly::new(p.space().clone(), vec![x0]);
    }

    // Inequality rows restricted to the affine hull: a' y <= b - a . x0.
    let mut reduced: Vec<(RatVector, Rational)> = Vec::new();
    for (row, sense, rhs) in p.rows() {
        if sense == Sense::Eq {
            continue;
        }
        let coeffs: RatVector = null_basis.iter().map(|n| dot(row, n)).collect();
        let slack = rhs - dot(row, &x0);
        if crate::rational::is_zero_vec(&coeffs) {
            debug_assert!(!slack.is_negative(), "constant row contradicts non-emptiness");
            continue;
        }
        reduced.push((coeffs, slack));
    }

    // Homogenize: {(y, t) : a' y <= b' t, t >= 0} is pointed because the
    // polytope is bounded and non-empty.
    let mut cone_rows: Vec<RatVector> = Vec::with_capacity(reduced.len() + 1);
    for (coeffs, slack) in &reduced {
        let mut row: RatVector = coeffs.iter().map(|c| -c).collect();
        row.push(slack.clone());
        cone_rows.push(row);
    }
    let mut t_row = vec![int(0); k];
    t_row.push(int(1));
    cone_rows.push(t_row);

    let rays = extreme_rays(&cone_rows, k + 1)?;
    let mut vertices = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = &ray[k];
        if t.is_zero() {
            return Err(Error::Internal(
                "bounded polytope produced a horizon ray during enumeration".into(),
            ));
        }
        let mut x = x0.clone();
        for (j, n) in null_basis.iter().enumerate() {
            let coeff = &ray[j] / t;
            crate::rational::add_scaled(&mut x, &coeff, n);
        }
        vertices.push(x);
    }
    vertices.sort();
    VPoly::new(p.space().clone(), vertices)
}

/// Irredundant H-representation of the convex hull of a point set:
/// affine-hull equality rows plus one row per facet. Round trip holds:
/// `enumerate_vertices(hull(v))` is exactly the set of extreme points of `v`.
pub fn hull(v: &VPoly) -> Result<HPoly> {
    if v.is_empty() {
        return Err(Error::EmptyPolyhedron("hull"));
    }
    let d = v.dim();
    let v0 = &v.vertices[0];
    let diffs: Vec<RatVector> = v.vertices[1..]
        .iter()
        .map(|vi| vi.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();

    // Independent difference vectors spanning the affine hull.
    let mut span: Vec<RatVector> = Vec::new();
    for diff in &diffs {
        let mut candidate = span.clone();
        candidate.push(diff.clone());
        if rref(&RatMatrix::from_rows(&candidate)?).rank == candidate.len() {
            span = candidate;
        }
    }
    let k = span.len();

    // Affine-hull equalities: normals orthogonal to the span.
    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    let span_matrix = if k == 0 { RatMatrix::zero(0, d) } else { RatMatrix::from_rows(&span)? };
    let orth = solve_linear(&span_matrix, &vec![int(0); k])?
        .expect("homogeneous system is always consistent")
        .nullspace;
    for g in orth {
        let rhs = dot(&g, v0);
        rows.push((g, Sense::Eq, rhs));
    }
    if k == 0 {
        // Single point: the equalities pin every coordinate already.
        return canonical_hpoly(v.space().clone(), rows);
    }

    // Coordinates of each vertex in the affine hull: y_i solves N y = v_i - v0,
    // where N has the span vectors as columns.
    let n_matrix = span_matrix.transpose();
    let mut coords: Vec<RatVector> = Vec::with_capacity(v.vertices.len());
    for vi in &v.vertices {
        let diff: RatVector = vi.iter().zip(v0).map(|(a, b)| a - b).collect();
        let sol = solve_linear(&n_matrix, &diff)?
            .ok_or_else(|| Error::Internal("vertex outside its own affine hull".into()))?;
        debug_assert!(sol.nullspace.is_empty());
        coords.push(sol.particular);
    }

    // Valid inequalities c . y + beta >= 0 form a pointed cone in (c, beta);
    // its extreme rays are the facets.
    let polar_rows: Vec<RatVector> = coords
        .iter()
        .map(|y| {
            let mut row = y.clone();
            row.push(int(1));
            row
        })
        .collect();
    let facets = extreme_rays(&polar_rows, k + 1)?;

    // Map facet rows back to x-space through k independent coordinate rows
    // of N: y = Nr^{-1} (x_R - v0_R) on the affine hull.
    let pivot_rows = rref(&span_matrix).pivot_cols;
    debug_assert_eq!(pivot_rows.len(), k);
    let mut nr = RatMatrix::zero(k, k);
    for (a, &r) in pivot_rows.iter().enumerate() {
        for b in 0..k {
            nr[(a, b)] = n_matrix[(r, b)].clone();
        }
    }
    let nr_inv = invert(&nr.transpose())
        .ok_or_else(|| Error::Internal("pivot rows of the span are singular".into()))?;
    for facet in facets {
        let c = &facet[..k];
        let beta = &facet[k];
        // w = -c^T Nr^{-1}; row: w . x_R <= beta + w . v0_R.
        let w = nr_inv.mul_vec(&c.iter().map(|x| -x).collect::<Vec<_>>())?;
        let mut row = vec![int(0); d];
        let mut rhs = beta.clone();
        for (a, &r) in pivot_rows.iter().enumerate() {
            rhs += &w[a] * &v0[r];
            row[r] = w[a].clone();
        }
        rows.push((row, Sense::Le, rhs));
    }
    canonical_hpoly(v.space().clone(), rows)
}

/// Normalizes rows to primitive integer form and sorts them so equal
/// polyhedra built along different routes print identically.
pub(crate) fn canonical_hpoly(
    space: VarSpace,
    rows: Vec<(RatVector, Sense, Rational)>,
) -> Result<HPoly> {
    let mut canon: Vec<(RatVector, Sense, Rational)> = rows
        .into_iter()
        .map(|(row, sense, rhs)| {
            let mut joint = row;
            joint.push(rhs);
            let joint = primitive(&joint);
            let rhs = joint.last().cloned().expect("row has a rhs");
            (joint[..joint.len() - 1].to_vec(), sense, rhs)
        })
        .collect();
    canon.sort_by(|x, y| {
        let key = |s: Sense| matches!(s, Sense::Le) as u8;
        (key(x.1), &x.0, &x.2).cmp(&(key(y.1), &y.0, &y.2))
    });
    canon.dedup();
    HPoly::from_rows(space, canon)
}

/// Exact set equality of two polyhedra over a common space.
///
/// Bounded pair: mutual containment of the enumerated vertex sets.
/// Otherwise: a row-space prefilter on the lineality spaces, then mutual
/// inclusion decided by one LP per constraint row.
pub fn poly_equal(p: &HPoly, q: &HPoly) -> Result<bool> {
    if p.space() != q.space() {
        return Err(Error::SpaceMismatch("poly_equal"));
    }
    let p_empty = lp::is_empty(p).is_empty();
    let q_empty = lp::is_empty(q).is_empty();
    if p_empty || q_empty {
        return Ok(p_empty && q_empty);
    }
    let pb = is_bounded(p)?;
    let qb = is_bounded(q)?;
    if pb.is_bounded() != qb.is_bounded() {
        return Ok(false);
    }
    if pb.is_bounded() {
        let vp = enumerate_vertices(p)?;
        let vq = enumerate_vertices(q)?;
        for v in vp.vertices() {
            if !q.contains(v)? {
                return Ok(false);
            }
        }
        for v in vq.vertices() {
            if !p.contains(v)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    // Lineality spaces must agree; both equal the nullspace of the stacked
    // row normals, so comparing rref canonical forms decides it cheaply.
    if normal_rowspace(p) != normal_rowspace(q) {
        return Ok(false);
    }
    Ok(included_in(p, q)? && included_in(q, p)?)
}

fn normal_rowspace(p: &HPoly) -> RatMatrix {
    let reduced = rref(p.matrix());
    let mut rows = reduced.matrix.row_vecs();
    rows.truncate(reduced.rank);
    RatMatrix::from_rows(&rows).expect("rows share a length")
}

/// Is every point of `p` in `q`? Decided row by row: the maximum of each row
/// functional of `q` over `p` must not exceed the rhs (and the minimum must
/// reach it for equality rows). Requires `p` non-empty.
pub(crate) fn included_in(p: &HPoly, q: &HPoly) -> Result<bool> {
    for (row, sense, rhs) in q.rows() {
        match lp::maximize(p, row)? {
            RowOptimum::Value { optimum, .. } => {
                if &optimum > rhs {
                    return Ok(false);
                }
            }
            RowOptimum::Unbounded { .. } => return Ok(false),
            RowOptimum::Infeasible { .. } => {
                return Err(Error::Internal("inclusion test on an empty polyhedron".into()))
            }
        }
        if sense == Sense::Eq {
            match lp::minimize(p, row)? {
                RowOptimum::Value { optimum, .. } => {
                    if &optimum < rhs {
                        return Ok(false);
                    }
                }
                RowOptimum::Unbounded { .. } => return Ok(false),
                RowOptimum::Infeasible { .. } => {
                    return Err(Error::Internal("inclusion test on an empty polyhedron".into()))
                }
            }
        }
    }
    Ok(true)
}
