//! Double description: extreme rays of a pointed polyhedral cone.
//!
//! The cone is given as `{z : c_i . z >= 0}` by its row normals. Rows are
//! inserted one at a time; the extreme-ray set is maintained by keeping the
//! nonnegative rays and combining adjacent (positive, negative) pairs.
//! Adjacency uses the combinatorial test: two rays are adjacent iff no other
//! ray's zero set contains the intersection of theirs (restricted to the
//! rows processed so far). Sound because the cone is pointed and the ray set
//! is always the complete extreme-ray set of the intermediate cone.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{invert, rref, RatMatrix};
use crate::rational::{dot, primitive, RatVector, Rational};

struct Ray {
    coords: RatVector,
    /// Bitset over all input rows: bit set where the row evaluates to zero.
    zeros: Vec<u64>,
}

fn zero_bits(coords: &[Rational], rows: &[RatVector], words: usize) -> Vec<u64> {
    let mut bits = vec![0u64; words];
    for (i, row) in rows.iter().enumerate() {
        if dot(row, coords).is_zero() {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

fn subset_within(a: &[u64], b: &[u64], mask: &[u64]) -> bool {
    a.iter().zip(b).zip(mask).all(|((x, y), m)| x & m & !y == 0)
}

/// Extreme rays of the pointed cone `{z in R^dim : rows . z >= 0}`,
/// canonically scaled (primitive integer form) and lexicographically sorted.
///
/// Errors if the rows do not have full column rank; callers establish
/// pointedness before calling (bounded nonempty polytopes homogenize to
/// pointed cones).
pub fn extreme_rays(rows: &[RatVector], dim: usize) -> Result<Vec<RatVector>> {
    debug_assert!(rows.iter().all(|r| r.len() == dim));
    let m = rows.len();
    let words = m.div_ceil(64);

    // Initial basis: the first `dim` linearly independent rows.
    let mut chosen: Vec<usize> = Vec::new();
    let mut stacked: Vec<RatVector> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == dim {
            break;
        }
        stacked.push(row.clone());
        if rref(&RatMatrix::from_rows(&stacked)?).rank == stacked.len() {
            chosen.push(i);
        } else {
            stacked.pop();
        }
    }
    if chosen.len() < dim {
        return Err(Error::Internal(
            "cone is not pointed: constraint rows do not span the space".into(),
        ));
    }
    let basis = RatMatrix::from_rows(&stacked)?;
    let inv = invert(&basis)
        .ok_or_else(|| Error::Internal("independent rows produced a singular basis".into()))?;

    let mut processed = vec![0u64; words];
    for &i in &chosen {
        processed[i / 64] |= 1 << (i % 64);
    }
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let col: RatVector = (0..dim).map(|i| inv[(i, j)].clone()).collect();
            let coords = primitive(&col);
            let zeros = zero_bits(&coords, rows, words);
            Ray { coords, zeros }
        })
        .collect();

    for (idx, row) in rows.iter().enumerate() {
        if processed[idx / 64] & (1 << (idx % 64)) != 0 {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        processed[idx / 64] |= 1 << (idx % 64);
        if vals.iter().all(|v| !v.is_negative()) {
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        let mut seen: BTreeSet<RatVector> = BTreeSet::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        for &p in &pos {
            for &n in &neg {
                let meet: Vec<u64> = rays[p]
                    .zeros
                    .iter()
                    .zip(&rays[n].zeros)
                    .map(|(a, b)| a & b)
                    .collect();
                let adjacent = rays.iter().enumerate().all(|(k, other)| {
                    k == p || k == n || !subset_within(&meet, &other.zeros, &processed)
                });
                if !adjacent {
                    continue;
                }
                let mut coords: RatVector = rays[n]
                    .coords
                    .iter()
                    .map(|c| &vals[p] * c)
                    .collect();
                crate::rational::add_scaled(&mut coords, &-&vals[n], &rays[p].coords);
                let coords = primitive(&coords);
                debug_assert!(dot(row, &coords).is_zero());
                if seen.insert(coords.clone()) {
                    let zeros = zero_bits(&coords, rows, words);
                    next.push(Ray { coords, zeros });
                }
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, ray) in rays.into_iter().enumerate() {
            if !vals[i].is_negative() {
                kept.push(ray);
            }
        }
        kept.extend(next);
        rays = kept;
    }

    let mut out: Vec<RatVector> = rays.into_iter().map(|r| r.coords).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> RatVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn orthant_rays_are_the_axes() {
        let rows = vec![v(&[1, 0]), v(&[0, 1])];
        let rays = extreme_rays(&rows, 2).unwrap();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn a_cut_orthant_gains_a_combined_ray() {
        // x >= 0, y >= 0, y - x >= -1 (i.e. x - y <= 1).
        let rows = vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 1])];
        let rays = extreme_rays(&rows, 2).unwrap();
        // (1, 0) violates the third row; it combines with (0, 1) into (1, 1).
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 1])]);
    }

    #[test]
    fn redundant_rows_change_nothing() {
        let rows = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 0])];
        let rays = extreme_rays(&rows, 2).unwrap();
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn three_dimensional_cross_section() {
        // Homogenization of the unit square: x <= t, y <= t, x >= 0, y >= 0, t >= 0.
        let rows = vec![
            v(&[-1, 0, 1]),
            v(&[0, -1, 1]),
            v(&[1, 0, 0]),
            v(&[0, 1, 0]),
            v(&[0, 0, 1]),
        ];
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(
            rays,
            vec![v(&[0, 0, 1]), v(&[0, 1, 1]), v(&[1, 0, 1]), v(&[1, 1, 1])]
        );
    }

    #[test]
    fn rank_deficient_rows_are_rejected() {
        let rows = vec![v(&[1, 0]), v(&[2, 0])];
        assert!(extreme_rays(&rows, 2).is_err());
    }
}
