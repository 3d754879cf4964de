//! Generators for the concrete polytope and LP families used throughout:
//! directed-tour polytopes, the assignment-style tour polytope, and the three
//! spanning-tree formulations (subtour-elimination, lifted, and lifted with
//! the edge variables substituted out).
//!
//! Variable orderings are fixed once and documented here:
//! - arcs of the complete digraph: `(i, j)` lexicographic, `i != j`;
//! - edges of the complete graph: `(i, j)` lexicographic with `i < j`;
//! - lifted variables `z[k,i,j]`: `k`-major, then arc order.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::LinProgram;
use crate::polyhedron::{HPoly, Sense, VPoly};
use crate::rational::{int, RatVector, Rational};
use crate::space::{VarSpace, Variable};

/// Directed arcs of the complete digraph on `{1..n}`, lexicographic.
pub fn arc_list(n: usize) -> Vec<(usize, usize)> {
    let mut arcs = Vec::with_capacity(n * (n - 1));
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                arcs.push((i, j));
            }
        }
    }
    arcs
}

/// Edges of the complete graph on `{1..n}`: `(i, j)` with `i < j`, lexicographic.
pub fn edge_list(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in (i + 1)..=n {
            edges.push((i, j));
        }
    }
    edges
}

fn arc_space(n: usize) -> VarSpace {
    VarSpace::new(arc_list(n).into_iter().map(|(i, j)| Variable::new("x", vec![i, j])).collect())
        .expect("arc list has no duplicates")
}

fn assignment_space(n: usize) -> VarSpace {
    let mut vars = Vec::new();
    for city in 2..=n {
        for time in 1..=(n - 1) {
            vars.push(Variable::new("w", vec![city, time]));
        }
    }
    VarSpace::new(vars).expect("assignment grid has no duplicates")
}

fn edge_space(n: usize) -> VarSpace {
    VarSpace::new(edge_list(n).into_iter().map(|(i, j)| Variable::new("x", vec![i, j])).collect())
        .expect("edge list has no duplicates")
}

fn lifted_space(n: usize) -> VarSpace {
    let mut vars = Vec::new();
    for k in 1..=n {
        for (i, j) in arc_list(n) {
            vars.push(Variable::new("z", vec![k, i, j]));
        }
    }
    VarSpace::new(vars).expect("lifted grid has no duplicates")
}

/// One directed closed tour on `{1..n}`, stored by its arc set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TourVector {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl TourVector {
    /// Validates out-degree one, in-degree one, and a single cycle through
    /// all `n` cities.
    pub fn new(n: usize, arcs: BTreeSet<(usize, usize)>) -> Result<Self> {
        if arcs.len() != n {
            return Err(Error::MalformedInput(format!(
                "a tour on {n} cities has {n} arcs, got {}",
                arcs.len()
            )));
        }
        let mut succ = vec![0usize; n + 1];
        let mut indeg = vec![0usize; n + 1];
        for &(i, j) in &arcs {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::MalformedInput(format!("arc ({i}, {j}) is not valid")));
            }
            if succ[i] != 0 {
                return Err(Error::MalformedInput(format!("city {i} has out-degree > 1")));
            }
            succ[i] = j;
            indeg[j] += 1;
        }
        if indeg[1..=n].iter().any(|&d| d != 1) {
            return Err(Error::MalformedInput("every city needs in-degree exactly 1".into()));
        }
        let mut seen = 1usize;
        let mut at = succ[1];
        while at != 1 {
            seen += 1;
            if seen > n {
                return Err(Error::MalformedInput("arcs split into several cycles".into()));
            }
            at = succ[at];
        }
        if seen != n {
            return Err(Error::MalformedInput("arcs split into several cycles".into()));
        }
        Ok(Self { n, arcs })
    }

    /// Builds the tour `1 -> order[0] -> order[1] -> ... -> 1`.
    pub fn from_order(n: usize, order: &[usize]) -> Result<Self> {
        let mut arcs = BTreeSet::new();
        let mut prev = 1usize;
        for &city in order {
            arcs.insert((prev, city));
            prev = city;
        }
        arcs.insert((prev, 1));
        Self::new(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    /// Characteristic vector in the arc ordering of `gen_standard_tsp`.
    pub fn to_point(&self) -> RatVector {
        arc_list(self.n)
            .into_iter()
            .map(|arc| if self.arcs.contains(&arc) { int(1) } else { int(0) })
            .collect()
    }

    fn successor(&self, city: usize) -> usize {
        self.arcs.iter().find(|&&(i, _)| i == city).map(|&(_, j)| j).expect("tour is total")
    }
}

/// City-by-time 0/1 assignment for cities `2..n` over times `1..n-1`;
/// rows and columns each sum to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentVector {
    n: usize,
    /// Row-major over (city - 2, time - 1).
    entries: Vec<bool>,
}

impl AssignmentVector {
    pub fn new(n: usize, entries: Vec<bool>) -> Result<Self> {
        let m = n - 1;
        if entries.len() != m * m {
            return Err(Error::MalformedInput(format!(
                "assignment grid needs {} entries, got {}",
                m * m,
                entries.len()
            )));
        }
        for c in 0..m {
            if (0..m).filter(|&t| entries[c * m + t]).count() != 1 {
                return Err(Error::MalformedInput(format!("city {} is not visited once", c + 2)));
            }
        }
        for t in 0..m {
            if (0..m).filter(|&c| entries[c * m + t]).count() != 1 {
                return Err(Error::MalformedInput(format!("time {} is not used once", t + 1)));
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn visited_at(&self, time: usize) -> usize {
        let m = self.n - 1;
        (0..m).find(|&c| self.entries[c * m + (time - 1)]).expect("column sums to one") + 2
    }

    pub fn time_of(&self, city: usize) -> usize {
        let m = self.n - 1;
        (0..m).find(|&t| self.entries[(city - 2) * m + t]).expect("row sums to one") + 1
    }

    /// 0/1 vector in the ordering of `gen_alternate_tsp`.
    pub fn to_point(&self) -> RatVector {
        self.entries.iter().map(|&b| if b { int(1) } else { int(0) }).collect()
    }

    /// Reads an exact 0/1 point back into an assignment.
    pub fn from_point(n: usize, point: &[Rational]) -> Result<Self> {
        let entries = point
            .iter()
            .map(|v| {
                if v.is_one() {
                    Ok(true)
                } else if v.is_zero() {
                    Ok(false)
                } else {
                    Err(Error::MalformedInput(format!("entry {v} is not 0/1")))
                }
            })
            .collect::<Result<Vec<bool>>>()?;
        Self::new(n, entries)
    }
}

/// All distinct directed tours with city 1 fixed as start: `(n-1)!` of them.
pub fn all_tours(n: usize) -> Result<Vec<TourVector>> {
    if !(3..=6).contains(&n) {
        return Err(Error::OutOfRange { what: "tour city count", got: n, min: 3, max: 6 });
    }
    let mut rest: Vec<usize> = (2..=n).collect();
    let mut tours = Vec::new();
    permute(&mut rest, 0, &mut |order| {
        tours.push(TourVector::from_order(n, order).expect("permutation orders are valid tours"));
    });
    Ok(tours)
}

fn permute(items: &mut Vec<usize>, at: usize, emit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        emit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, emit);
        items.swap(at, i);
    }
    // Restore lexicographic-ish determinism by construction: the swap pattern
    // visits each permutation exactly once.
}

/// V-representation of the directed-tour polytope: the characteristic
/// vectors of all distinct tours, in `R^{n(n-1)}`, class `x`.
pub fn gen_standard_tsp(n: usize) -> Result<VPoly> {
    let tours = all_tours(n)?;
    VPoly::new(arc_space(n), tours.iter().map(TourVector::to_point).collect())
}

/// H-representation of the assignment-style tour polytope on `(n-1)^2`
/// variables, class `w`: unit row sums, unit column sums, nonnegativity.
pub fn gen_alternate_tsp(n: usize) -> Result<HPoly> {
    if n < 3 {
        return Err(Error::OutOfRange { what: "city count", got: n, min: 3, max: usize::MAX });
    }
    let m = n - 1;
    let space = assignment_space(n);
    let dim = m * m;
    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    for c in 0..m {
        let mut row = vec![int(0); dim];
        for t in 0..m {
            row[c * m + t] = int(1);
        }
        rows.push((row, Sense::Eq, int(1)));
    }
    for t in 0..m {
        let mut row = vec![int(0); dim];
        for c in 0..m {
            row[c * m + t] = int(1);
        }
        rows.push((row, Sense::Eq, int(1)));
    }
    for j in 0..dim {
        let mut row = vec![int(0); dim];
        row[j] = int(-1);
        rows.push((row, Sense::Le, int(0)));
    }
    HPoly::from_rows(space, rows)
}

/// `w[i,t] = 1` iff city `i` is visited at time `t`, with city 1 the fixed
/// start and end.
pub fn tour_to_assignment(tour: &TourVector) -> Result<AssignmentVector> {
    let n = tour.n;
    let m = n - 1;
    let mut entries = vec![false; m * m];
    let mut at = tour.successor(1);
    for time in 1..=m {
        if at == 1 {
            return Err(Error::MalformedInput("tour returns to the start early".into()));
        }
        entries[(at - 2) * m + (time - 1)] = true;
        at = tour.successor(at);
    }
    AssignmentVector::new(n, entries)
}

pub fn assignment_to_tour(a: &AssignmentVector) -> Result<TourVector> {
    let n = a.n;
    let mut order = Vec::with_capacity(n - 1);
    for time in 1..=(n - 1) {
        order.push(a.visited_at(time));
    }
    TourVector::from_order(n, &order)
}

fn validated_costs(n_edges: usize, costs: Option<&[Rational]>) -> Result<RatVector> {
    match costs {
        Some(c) => {
            if c.len() != n_edges {
                return Err(Error::DimensionMismatch(format!(
                    "{} edge costs supplied for {} edges",
                    c.len(),
                    n_edges
                )));
            }
            Ok(c.to_vec())
        }
        None => Ok(vec![int(1); n_edges]),
    }
}

fn check_mst_range(n: usize) -> Result<()> {
    if !(3..=5).contains(&n) {
        return Err(Error::OutOfRange { what: "vertex count", got: n, min: 3, max: 5 });
    }
    Ok(())
}

/// Subtour-elimination formulation of the spanning-tree polytope on `K_n`:
/// edge sum `n-1`, a rank row for every vertex subset of size 2..n-1, and
/// nonnegativity. Exponentially many rows by construction.
pub fn gen_mst_edmonds(n: usize, costs: Option<&[Rational]>) -> Result<(HPoly, LinProgram)> {
    check_mst_range(n)?;
    let edges = edge_list(n);
    let dim = edges.len();
    let space = edge_space(n);
    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    rows.push((vec![int(1); dim], Sense::Eq, int((n - 1) as i64)));
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if !(2..=n - 1).contains(&size) {
            continue;
        }
        let inside = |v: usize| mask & (1 << (v - 1)) != 0;
        let mut row = vec![int(0); dim];
        for (e, &(i, j)) in edges.iter().enumerate() {
            if inside(i) && inside(j) {
                row[e] = int(1);
            }
        }
        rows.push((row, Sense::Le, int((size - 1) as i64)));
    }
    for e in 0..dim {
        let mut row = vec![int(0); dim];
        row[e] = int(-1);
        rows.push((row, Sense::Le, int(0)));
    }
    let poly = HPoly::from_rows(space, rows)?;
    let objective = validated_costs(dim, costs)?;
    let lp = LinProgram::new(objective, poly.clone())?;
    Ok((poly, lp))
}

/// Polynomial-size lifted formulation: edge variables `x` plus directed
/// variables `z[k,i,j]` linked by `z[k,i,j] + z[k,j,i] = x_e`, with per-root
/// degree rows. Classes `x` and `z`.
pub fn gen_mst_martin(n: usize, costs: Option<&[Rational]>) -> Result<(HPoly, LinProgram)> {
    check_mst_range(n)?;
    let edges = edge_list(n);
    let arcs = arc_list(n);
    let n_edges = edges.len();
    let space = edge_space(n).concat(&lifted_space(n))?;
    let dim = space.dim();
    let z_col = |k: usize, i: usize, j: usize| {
        n_edges
            + (k - 1) * arcs.len()
            + arcs.iter().position(|&a| a == (i, j)).expect("arc exists")
    };

    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    let mut edge_sum = vec![int(0); dim];
    for slot in edge_sum.iter_mut().take(n_edges) {
        *slot = int(1);
    }
    rows.push((edge_sum, Sense::Eq, int((n - 1) as i64)));
    for k in 1..=n {
        for (e, &(i, j)) in edges.iter().enumerate() {
            let mut row = vec![int(0); dim];
            row[z_col(k, i, j)] = int(1);
            row[z_col(k, j, i)] = int(1);
            row[e] = int(-1);
            rows.push((row, Sense::Eq, int(0)));
        }
    }
    for k in 1..=n {
        for i in 1..=n {
            if i == k {
                continue;
            }
            let mut row = vec![int(0); dim];
            for j in 1..=n {
                if j != i {
                    row[z_col(k, i, j)] = int(1);
                }
            }
            rows.push((row, Sense::Le, int(1)));
        }
    }
    for k in 1..=n {
        let mut row = vec![int(0); dim];
        for j in 1..=n {
            if j != k {
                row[z_col(k, k, j)] = int(1);
            }
        }
        rows.push((row, Sense::Le, int(0)));
    }
    for c in 0..dim {
        let mut row = vec![int(0); dim];
        row[c] = int(-1);
        rows.push((row, Sense::Le, int(0)));
    }
    let poly = HPoly::from_rows(space, rows)?;
    let edge_costs = validated_costs(n_edges, costs)?;
    let mut objective = vec![int(0); dim];
    objective[..n_edges].clone_from_slice(&edge_costs);
    let lp = LinProgram::new(objective, poly.clone())?;
    Ok((poly, lp))
}

/// The root vertex used to substitute the edge variables out: the smallest
/// vertex not incident to the edge.
pub fn substitution_root(n: usize, edge: (usize, usize)) -> usize {
    (1..=n).find(|&v| v != edge.0 && v != edge.1).expect("n >= 3 leaves a free vertex")
}

/// The lifted formulation restated over class `z` alone: every occurrence of
/// `x_e` is replaced by `z[r_e,i,j] + z[r_e,j,i]` for the root `r_e` of the
/// edge. The objective receives the same substitution.
pub fn gen_mst_martin_reduced(
    n: usize,
    costs: Option<&[Rational]>,
) -> Result<(HPoly, LinProgram)> {
    check_mst_range(n)?;
    let edges = edge_list(n);
    let arcs = arc_list(n);
    let space = lifted_space(n);
    let dim = space.dim();
    let z_col = |k: usize, i: usize, j: usize| {
        (k - 1) * arcs.len() + arcs.iter().position(|&a| a == (i, j)).expect("arc exists")
    };

    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    let mut sum_row = vec![int(0); dim];
    for &(i, j) in &edges {
        let r = substitution_root(n, (i, j));
        sum_row[z_col(r, i, j)] += int(1);
        sum_row[z_col(r, j, i)] += int(1);
    }
    rows.push((sum_row, Sense::Eq, int((n - 1) as i64)));
    for k in 1..=n {
        for &(i, j) in &edges {
            let r = substitution_root(n, (i, j));
            let mut row = vec![int(0); dim];
            row[z_col(k, i, j)] += int(1);
            row[z_col(k, j, i)] += int(1);
            row[z_col(r, i, j)] -= int(1);
            row[z_col(r, j, i)] -= int(1);
            rows.push((row, Sense::Eq, int(0)));
        }
    }
    for k in 1..=n {
        for i in 1..=n {
            if i == k {
                continue;
            }
            let mut row = vec![int(0); dim];
            for j in 1..=n {
                if j != i {
                    row[z_col(k, i, j)] = int(1);
                }
            }
            rows.push((row, Sense::Le, int(1)));
        }
    }
    for k in 1..=n {
        let mut row = vec![int(0); dim];
        for j in 1..=n {
            if j != k {
                row[z_col(k, k, j)] = int(1);
            }
        }
        rows.push((row, Sense::Le, int(0)));
    }
    for c in 0..dim {
        let mut row = vec![int(0); dim];
        row[c] = int(-1);
        rows.push((row, Sense::Le, int(0)));
    }
    let poly = HPoly::from_rows(space, rows)?;
    let edge_costs = validated_costs(edges.len(), costs)?;
    let mut objective = vec![int(0); dim];
    for (e, &(i, j)) in edges.iter().enumerate() {
        let r = substitution_root(n, (i, j));
        objective[z_col(r, i, j)] += &edge_costs[e];
        objective[z_col(r, j, i)] += &edge_costs[e];
    }
    let lp = LinProgram::new(objective, poly.clone())?;
    Ok((poly, lp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::enumerate_vertices;

    #[test]
    fn tour_counts_follow_fixed_start_enumeration() {
        assert_eq!(all_tours(3).unwrap().len(), 2);
        assert_eq!(all_tours(4).unwrap().len(), 6);
        assert!(all_tours(2).is_err());
        assert!(all_tours(7).is_err());
    }

    #[test]
    fn standard_tsp_vertices_have_n_ones() {
        let v = gen_standard_tsp(4).unwrap();
        assert_eq!(v.vertices().len(), 6);
        assert_eq!(v.dim(), 12);
        for vertex in v.vertices() {
            let ones: Rational = vertex.iter().cloned().sum();
            assert_eq!(ones, int(4));
        }
    }

    #[test]
    fn alternate_polytope_n3_is_the_two_by_two_doubly_stochastic_square() {
        let ap = gen_alternate_tsp(3).unwrap();
        assert_eq!(ap.dim(), 4);
        let verts = enumerate_vertices(&ap).unwrap();
        assert_eq!(verts.vertices().len(), 2);
        for v in verts.vertices() {
            assert!(v.iter().all(|x| x.is_zero() || x.is_one()));
        }
    }

    #[test]
    fn hull_of_the_two_permutation_matrices_is_the_assignment_system() {
        let ap = gen_alternate_tsp(3).unwrap();
        let vertices = crate::polyhedron::enumerate_vertices(&ap).unwrap();
        assert_eq!(vertices.vertices().len(), 2);
        let rebuilt = crate::polyhedron::hull(&vertices).unwrap();
        assert!(crate::polyhedron::poly_equal(&rebuilt, &ap).unwrap());
    }

    #[test]
    fn tour_assignment_bijection_reads_off_visit_order() {
        let t = TourVector::from_order(3, &[2, 3]).unwrap();
        let a = tour_to_assignment(&t).unwrap();
        assert_eq!(a.visited_at(1), 2);
        assert_eq!(a.visited_at(2), 3);
        assert_eq!(assignment_to_tour(&a).unwrap(), t);

        let t = TourVector::from_order(3, &[3, 2]).unwrap();
        let a = tour_to_assignment(&t).unwrap();
        assert_eq!(a.visited_at(1), 3);
        assert_eq!(a.visited_at(2), 2);
        assert_eq!(assignment_to_tour(&a).unwrap(), t);
    }

    #[test]
    fn malformed_tours_are_rejected() {
        // Two 2-cycles on 4 cities.
        let arcs: BTreeSet<(usize, usize)> =
            [(1, 2), (2, 1), (3, 4), (4, 3)].into_iter().collect();
        assert!(TourVector::new(4, arcs).is_err());
    }

    #[test]
    fn edmonds_n3_has_the_three_pair_rows() {
        let (p, lp) = gen_mst_edmonds(3, None).unwrap();
        assert_eq!(p.dim(), 3);
        // 1 equality + 3 two-element subsets + 3 nonnegativity rows.
        assert_eq!(p.num_rows(), 7);
        assert_eq!(lp.objective, vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn edmonds_n3_vertices_are_the_three_triangle_trees() {
        let (p, _) = gen_mst_edmonds(3, None).unwrap();
        let verts = enumerate_vertices(&p).unwrap();
        assert_eq!(verts.vertices().len(), 3);
        for v in verts.vertices() {
            assert!(v.iter().all(|x| x.is_zero() || x.is_one()));
            let total: Rational = v.iter().cloned().sum();
            assert_eq!(total, int(2));
        }
    }

    #[test]
    fn martin_n3_variable_and_row_layout() {
        let (q, _) = gen_mst_martin(3, None).unwrap();
        // 3 edge variables plus 3 * 3 * 2 lifted variables.
        assert_eq!(q.dim(), 21);
        assert_eq!(q.space().classes(), vec!["x", "z"]);
    }

    #[test]
    fn martin_root_rows_force_self_arcs_to_zero() {
        let (q, _) = gen_mst_martin(3, None).unwrap();
        let verts = enumerate_vertices(&q).unwrap();
        assert!(!verts.is_empty());
        let arcs = arc_list(3);
        for v in verts.vertices() {
            for k in 1..=3 {
                for (a, &(i, _)) in arcs.iter().enumerate() {
                    if i == k {
                        assert!(v[3 + (k - 1) * arcs.len() + a].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_martin_uses_only_z() {
        let (qr, lp) = gen_mst_martin_reduced(3, None).unwrap();
        assert_eq!(qr.space().classes(), vec!["z"]);
        assert_eq!(qr.dim(), 18);
        // Substituted objective touches exactly two arcs per edge.
        let nonzero = lp.objective.iter().filter(|c| !c.is_zero()).count();
        assert_eq!(nonzero, 6);
    }

    #[test]
    fn substitution_root_is_the_smallest_free_vertex() {
        assert_eq!(substitution_root(3, (1, 2)), 3);
        assert_eq!(substitution_root(3, (1, 3)), 2);
        assert_eq!(substitution_root(3, (2, 3)), 1);
        assert_eq!(substitution_root(5, (2, 4)), 1);
    }
}
