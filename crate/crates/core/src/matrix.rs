//! Dense exact-rational matrices and the elimination kernels built on them.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, RatVector, Rational};

/// Row-major dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![int(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = int(1);
        }
        m
    }

    pub fn from_rows(rows: &[RatVector]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Ok(Self { rows: r, cols: c, entries: rows.concat() })
    }

    /// Convenience constructor from `i64` literals, used pervasively in tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "rows of unequal length");
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| int(x))).collect();
        Self { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rational] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<RatVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RatVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| crate::rational::dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

/// Result of `rref`: the reduced row echelon form together with the exact
/// rank and the pivot column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Gauss-Jordan elimination to reduced row echelon form, exactly.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivot_cols = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for j in 0..cols {
                let tmp = a[(src, j)].clone();
                a[(src, j)] = a[(pivot_row, j)].clone();
                a[(pivot_row, j)] = tmp;
            }
        }
        let inv = a[(pivot_row, col)].clone().recip();
        for j in col..cols {
            let scaled = &a[(pivot_row, j)] * &inv;
            a[(pivot_row, j)] = scaled;
        }
        for r in 0..rows {
            if r == pivot_row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for j in col..cols {
                let delta = &factor * &a[(pivot_row, j)];
                a[(r, j)] -= delta;
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    Rref { matrix: a, rank: pivot_cols.len(), pivot_cols }
}

/// Exact inverse of a square matrix via Gauss-Jordan on `[M | I]`,
/// or `None` if singular.
pub fn invert(m: &RatMatrix) -> Option<RatMatrix> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let mut aug = RatMatrix::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = int(1);
    }
    let red = rref(&aug);
    if red.pivot_cols != (0..n).collect::<Vec<_>>() {
        return None;
    }
    let mut inv = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = red.matrix[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// One exact solution of `a x = b` plus a basis of the nullspace of `a`,
/// or `None` when the system is inconsistent. The particular solution sets
/// every free variable to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: RatVector,
    pub nullspace: Vec<RatVector>,
}

pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Option<LinearSolution>> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but rhs has length {}",
            a.rows,
            b.len()
        )));
    }
    let n = a.cols;
    let mut aug = RatMatrix::zero(a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let red = rref(&aug);
    // A pivot in the rhs column means 0 = 1 somewhere: inconsistent.
    if red.pivot_cols.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = vec![int(0); n];
    for (r, &pc) in red.pivot_cols.iter().enumerate() {
        particular[pc] = red.matrix[(r, n)].clone();
    }
    let pivot_set: std::collections::BTreeSet<usize> = red.pivot_cols.iter().copied().collect();
    let mut nullspace = Vec::new();
    for free in (0..n).filter(|j| !pivot_set.contains(j)) {
        let mut v = vec![int(0); n];
        v[free] = int(1);
        for (r, &pc) in red.pivot_cols.iter().enumerate() {
            v[pc] = -red.matrix[(r, free)].clone();
        }
        nullspace.push(v);
    }
    Ok(Some(LinearSolution { particular, nullspace }))
}
