//! Shared test oracles and random-instance generators.
//!
//! The oracles are deliberately independent of the library's production
//! paths: vertex enumeration by exhaustive basis subsets, spanning trees by
//! exhaustive edge subsets.

#![allow(dead_code)]

use polyef::matrix::{rref, RatMatrix};
use polyef::polyhedron::{HPoly, Sense};
use polyef::rational::{int, rat, RatVector, Rational};
use polyef::space::VarSpace;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-4i64..=4), rng.gen_range(1i64..=3))
}

pub fn nonzero_small_rat(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = small_rat(rng);
        if r != int(0) {
            return r;
        }
    }
}

pub fn positive_small_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(1i64..=4), rng.gen_range(1i64..=3))
}

/// Exhaustive basis-subset vertex oracle: every size-`dim` subset of rows is
/// solved as an equality system; unique solutions feasible for the whole
/// system are vertices. Exponential, for cross-checking small cases only.
pub fn brute_force_vertices(p: &HPoly) -> Vec<RatVector> {
    let dim = p.dim();
    let m = p.num_rows();
    let mut found: Vec<RatVector> = Vec::new();
    if dim == 0 || m < dim {
        return found;
    }
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let rows: Vec<RatVector> = subset.iter().map(|&i| p.row(i).to_vec()).collect();
        let rhs: RatVector = subset.iter().map(|&i| p.rhs(i).clone()).collect();
        let a = RatMatrix::from_rows(&rows).unwrap();
        if rref(&a).rank == dim {
            if let Some(sol) = polyef::matrix::solve_linear(&a, &rhs).unwrap() {
                if sol.nullspace.is_empty()
                    && p.contains(&sol.particular).unwrap()
                    && !found.contains(&sol.particular)
                {
                    found.push(sol.particular);
                }
            }
        }
        // Next lexicographic subset.
        let mut i = dim;
        loop {
            if i == 0 {
                found.sort();
                return found;
            }
            i -= 1;
            if subset[i] != i + m - dim {
                subset[i] += 1;
                for j in (i + 1)..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A random non-empty bounded polytope: a box around a random rational
/// center plus a few random cutting rows kept feasible at the center.
pub fn random_bounded_hpoly(
    rng: &mut ChaCha8Rng,
    class: &str,
    dim: usize,
    extra_rows: usize,
) -> HPoly {
    let center: RatVector = (0..dim).map(|_| small_rat(rng)).collect();
    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    for j in 0..dim {
        let mut hi = vec![int(0); dim];
        hi[j] = int(1);
        rows.push((hi, Sense::Le, &center[j] + int(rng.gen_range(1i64..=3))));
        let mut lo = vec![int(0); dim];
        lo[j] = int(-1);
        rows.push((lo, Sense::Le, -(&center[j] - int(rng.gen_range(1i64..=3)))));
    }
    for _ in 0..extra_rows {
        let coeffs: RatVector = (0..dim).map(|_| small_rat(rng)).collect();
        if coeffs.iter().all(|c| c == &int(0)) {
            continue;
        }
        let at_center = polyef::rational::dot(&coeffs, &center);
        let slack = positive_small_rat(rng);
        rows.push((coeffs, Sense::Le, at_center + slack));
    }
    HPoly::from_rows(VarSpace::flat(class, dim), rows).unwrap()
}

/// All spanning trees of the complete graph on `{1..n}` by exhaustive edge
/// subsets, as 0/1 incidence vectors in the `edge_list` ordering.
pub fn spanning_tree_vectors(n: usize) -> Vec<RatVector> {
    let edges = polyef::models::edge_list(n);
    let m = edges.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        // Union-find over the selected edges.
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        let mut acyclic = true;
        for (e, &(i, j)) in edges.iter().enumerate() {
            if mask & (1 << e) == 0 {
                continue;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                acyclic = false;
                break;
            }
            parent[ri] = rj;
        }
        if !acyclic {
            continue;
        }
        let root = find(&mut parent, 1);
        if (2..=n).all(|v| find(&mut parent, v) == root) {
            out.push(
                (0..m)
                    .map(|e| if mask & (1 << e) != 0 { int(1) } else { int(0) })
                    .collect(),
            );
        }
    }
    out.sort();
    out
}
