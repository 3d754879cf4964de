//! Exact rational linear programming.
//!
//! A two-phase primal simplex over arbitrary-precision rationals. Bland's
//! rule is used in both phases, so the solver terminates on the degenerate
//! systems this crate routinely produces. Every outcome carries an exact
//! certificate: a feasible point for optima, a Farkas witness for
//! infeasibility, a recession ray for unboundedness.
//!
//! Certificate conventions for `min c·x` over rows `a_i·x {<=,=} b_i`:
//! - Optimal: `point` is feasible, `c·point = optimum`, and `dual` satisfies
//!   `sum_i dual_i a_i = -c`, `dual_i >= 0` on `<=` rows, `dual·b = -optimum`.
//! - Infeasible: `dual` is a Farkas witness with `sum_i dual_i a_i = 0`,
//!   `dual_i >= 0` on `<=` rows and `dual·b < 0`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedron::{HPoly, Sense};
use crate::rational::{dot, int, RatVector, Rational};

/// A minimization problem over an H-polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinProgram {
    pub objective: RatVector,
    pub constraints: HPoly,
}

impl LinProgram {
    pub fn new(objective: RatVector, constraints: HPoly) -> Result<Self> {
        if objective.len() != constraints.dim() {
            return Err(Error::DimensionMismatch(format!(
                "objective has length {} but the polyhedron has {} variables",
                objective.len(),
                constraints.dim()
            )));
        }
        Ok(Self { objective, constraints })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub optimum: Option<Rational>,
    pub point: Option<RatVector>,
    /// Row multipliers: optimality certificate or Farkas witness (see module docs).
    pub dual: Option<RatVector>,
    /// Recession direction improving the objective, when unbounded.
    pub ray: Option<RatVector>,
}

/// Emptiness decision with certificate: a Farkas witness when empty,
/// a feasible point otherwise.
#[derive(Clone, Debug)]
pub enum Emptiness {
    Empty { witness: RatVector },
    NonEmpty { point: RatVector },
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty { .. })
    }
}

pub fn is_empty(p: &HPoly) -> Emptiness {
    let lp = LinProgram { objective: vec![int(0); p.dim()], constraints: p.clone() };
    let out = solve(&lp).expect("dimensions are consistent by construction");
    match out.status {
        LpStatus::Optimal => Emptiness::NonEmpty { point: out.point.unwrap() },
        LpStatus::Infeasible => Emptiness::Empty { witness: out.dual.unwrap() },
        LpStatus::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// Outcome of optimizing a single linear functional over a polyhedron.
#[derive(Clone, Debug)]
pub enum RowOptimum {
    Value { optimum: Rational, point: RatVector },
    Unbounded { ray: RatVector },
    Infeasible { witness: RatVector },
}

pub fn maximize(p: &HPoly, objective: &[Rational]) -> Result<RowOptimum> {
    let negated: RatVector = objective.iter().map(|c| -c).collect();
    let out = solve(&LinProgram::new(negated, p.clone())?)?;
    Ok(match out.status {
        LpStatus::Optimal => {
            RowOptimum::Value { optimum: -out.optimum.unwrap(), point: out.point.unwrap() }
        }
        LpStatus::Unbounded => RowOptimum::Unbounded { ray: out.ray.unwrap() },
        LpStatus::Infeasible => RowOptimum::Infeasible { witness: out.dual.unwrap() },
    })
}

pub fn minimize(p: &HPoly, objective: &[Rational]) -> Result<RowOptimum> {
    let out = solve(&LinProgram::new(objective.to_vec(), p.clone())?)?;
    Ok(match out.status {
        LpStatus::Optimal => {
            RowOptimum::Value { optimum: out.optimum.unwrap(), point: out.point.unwrap() }
        }
        LpStatus::Unbounded => RowOptimum::Unbounded { ray: out.ray.unwrap() },
        LpStatus::Infeasible => RowOptimum::Infeasible { witness: out.dual.unwrap() },
    })
}

/// Checks the Farkas conditions exactly: multipliers nonnegative on `<=`
/// rows, the combined normal vanishes, the combined rhs is negative.
pub fn verify_farkas(p: &HPoly, witness: &[Rational]) -> bool {
    if witness.len() != p.num_rows() {
        return false;
    }
    let mut combined = vec![int(0); p.dim()];
    let mut rhs = int(0);
    for (i, u) in witness.iter().enumerate() {
        if p.sense(i) == Sense::Le && u.is_negative() {
            return false;
        }
        crate::rational::add_scaled(&mut combined, u, p.row(i));
        rhs += u * p.rhs(i);
    }
    crate::rational::is_zero_vec(&combined) && rhs.is_negative()
}

/// Checks the optimality certificate exactly (see module docs).
pub fn verify_optimal(lp: &LinProgram, out: &LpOutcome) -> bool {
    let (Some(point), Some(optimum), Some(dual)) = (&out.point, &out.optimum, &out.dual) else {
        return false;
    };
    let p = &lp.constraints;
    if !p.contains(point).unwrap_or(false) || &dot(&lp.objective, point) != optimum {
        return false;
    }
    if dual.len() != p.num_rows() {
        return false;
    }
    let mut combined = lp.objective.clone();
    let mut rhs = optimum.clone();
    for (i, y) in dual.iter().enumerate() {
        if p.sense(i) == Sense::Le && y.is_negative() {
            return false;
        }
        crate::rational::add_scaled(&mut combined, y, p.row(i));
        rhs += y * p.rhs(i);
    }
    crate::rational::is_zero_vec(&combined) && rhs.is_zero()
}

pub fn solve(lp: &LinProgram) -> Result<LpOutcome> {
    if lp.objective.len() != lp.constraints.dim() {
        return Err(Error::DimensionMismatch(format!(
            "objective has length {} but the polyhedron has {} variables",
            lp.objective.len(),
            lp.constraints.dim()
        )));
    }
    let mut tab = Tableau::build(&lp.constraints);

    let phase1_cost = tab.phase1_cost();
    tab.run(&phase1_cost, true);
    let residual = tab.objective_value(&phase1_cost);
    if residual.is_positive() {
        let dual = tab.extract_dual(&phase1_cost, &lp.constraints);
        debug_assert!(verify_farkas(&lp.constraints, &dual));
        return Ok(LpOutcome {
            status: LpStatus::Infeasible,
            optimum: None,
            point: None,
            dual: Some(dual),
            ray: None,
        });
    }
    tab.evict_artificials();

    let phase2_cost = tab.phase2_cost(&lp.objective);
    match tab.run(&phase2_cost, false) {
        RunEnd::Optimal => {
            let point = tab.extract_point(lp.constraints.dim());
            let optimum = dot(&lp.objective, &point);
            let dual = tab.extract_dual(&phase2_cost, &lp.constraints);
            let out = LpOutcome {
                status: LpStatus::Optimal,
                optimum: Some(optimum),
                point: Some(point),
                dual: Some(dual),
                ray: None,
            };
            debug_assert!(verify_optimal(lp, &out));
            Ok(out)
        }
        RunEnd::Unbounded { entering } => {
            let point = tab.extract_point(lp.constraints.dim());
            let ray = tab.extract_ray(entering, lp.constraints.dim());
            debug_assert!(lp.constraints.contains(&point).unwrap());
            Ok(LpOutcome {
                status: LpStatus::Unbounded,
                optimum: None,
                point: Some(point),
                dual: None,
                ray: Some(ray),
            })
        }
    }
}

enum RunEnd {
    Optimal,
    Unbounded { entering: usize },
}

/// Full-tableau simplex state.
///
/// Columns: `2n` split variables (x = pos - neg), one slack per `<=` row,
/// one artificial per row, rhs last. The artificial block starts as the
/// identity, so after pivoting it holds the basis inverse; dual vectors are
/// read from it directly.
struct Tableau {
    rows: Vec<RatVector>,
    basis: Vec<usize>,
    n_vars: usize,
    art_start: usize,
    rhs_col: usize,
    /// Per original row: +1 or -1 scaling applied to make the rhs nonnegative.
    sigma: Vec<Rational>,
}

impl Tableau {
    fn build(p: &HPoly) -> Self {
        let n = p.dim();
        let m = p.num_rows();
        let n_slack = (0..m).filter(|&i| p.sense(i) == Sense::Le).count();
        let art_start = 2 * n + n_slack;
        let rhs_col = art_start + m;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut sigma = Vec::with_capacity(m);
        let mut slack_used = 0;
        for i in 0..m {
            let s = if p.rhs(i).is_negative() { int(-1) } else { int(1) };
            let mut row = vec![int(0); rhs_col + 1];
            for j in 0..n {
                let scaled = &s * &p.row(i)[j];
                row[n + j] = -scaled.clone();
                row[j] = scaled;
            }
            if p.sense(i) == Sense::Le {
                row[2 * n + slack_used] = s.clone();
                slack_used += 1;
            }
            row[art_start + i] = int(1);
            row[rhs_col] = &s * p.rhs(i);
            rows.push(row);
            basis.push(art_start + i);
            sigma.push(s);
        }
        Tableau { rows, basis, n_vars: n, art_start, rhs_col, sigma }
    }

    fn phase1_cost(&self) -> RatVector {
        let mut c = vec![int(0); self.rhs_col];
        for slot in c.iter_mut().skip(self.art_start) {
            *slot = int(1);
        }
        c
    }

    fn phase2_cost(&self, objective: &[Rational]) -> RatVector {
        let mut c = vec![int(0); self.rhs_col];
        for j in 0..self.n_vars {
            c[j] = objective[j].clone();
            c[self.n_vars + j] = -objective[j].clone();
        }
        c
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| &cost[b] * &row[self.rhs_col])
            .sum()
    }

    /// Reduced cost of column `j` under `cost`.
    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() && !row[j].is_zero() {
                r -= &cost[b] * &row[j];
            }
        }
        r
    }

    /// Runs Bland-rule pivoting until optimality or detected unboundedness.
    fn run(&mut self, cost: &[Rational], allow_artificials: bool) -> RunEnd {
        loop {
            let limit = if allow_artificials { self.rhs_col } else { self.art_start };
            let entering = (0..limit).find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(e) = entering else {
                return RunEnd::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[e].is_positive() {
                    continue;
                }
                let ratio = &row[self.rhs_col] / &row[e];
                let better = match &leave {
                    None => true,
                    Some((cur, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*cur])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return RunEnd::Unbounded { entering: e };
            };
            self.pivot(r, e);
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].clone().recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let factor = row[e].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[r] = e;
    }

    /// After a zero-residual phase 1, pivots artificial variables out of the
    /// basis; rows that cannot be pivoted are implied by the others and are
    /// dropped.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.art_start {
                i += 1;
                continue;
            }
            match (0..self.art_start).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    debug_assert!(self.rows[i][self.rhs_col].is_zero());
                    self.rows.swap_remove(i);
                    self.basis.swap_remove(i);
                }
            }
        }
    }

    /// Maps the current basic solution back to the original free variables.
    fn extract_point(&self, n: usize) -> RatVector {
        let mut split = vec![int(0); 2 * n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < 2 * n {
                split[b] = row[self.rhs_col].clone();
            }
        }
        (0..n).map(|j| &split[j] - &split[n + j]).collect()
    }

    /// Recession direction obtained from a non-positive entering column.
    fn extract_ray(&self, entering: usize, n: usize) -> RatVector {
        let mut split = vec![int(0); 2 * n];
        if entering < 2 * n {
            split[entering] = int(1);
        }
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < 2 * n {
                split[b] = -row[entering].clone();
            }
        }
        (0..n).map(|j| &split[j] - &split[n + j]).collect()
    }

    /// Row multipliers for the original system under `cost`: reads the basis
    /// inverse off the artificial block and undoes the sign scaling. Rows
    /// dropped as redundant contribute zero automatically.
    fn extract_dual(&self, cost: &[Rational], p: &HPoly) -> RatVector {
        (0..p.num_rows())
            .map(|k| {
                let mut y = int(0);
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !cost[b].is_zero() && !row[self.art_start + k].is_zero() {
                        y += &cost[b] * &row[self.art_start + k];
                    }
                }
                -(&self.sigma[k] * y)
            })
            .collect()
    }
}
