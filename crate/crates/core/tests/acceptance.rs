//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Everything is exact; no tolerances appear anywhere. Property criteria use
//! fixed seeds and pinned instance counts.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use polyef::ef::{
    check_augmentation, check_ef, check_ef_all, classify_relationship,
    construct_mutual_augmentation, independent_spaces, overlap_augmentation_invariance,
    AugmentationSpec, EfDefinition, PolyInput, RelationTag,
};
use polyef::lp::{self, LinProgram, LpStatus, RowOptimum};
use polyef::map::AffineMapSpec;
use polyef::matrix::RatMatrix;
use polyef::models::{
    all_tours, assignment_to_tour, arc_list, edge_list, gen_alternate_tsp, gen_mst_edmonds,
    gen_mst_martin, gen_mst_martin_reduced, gen_standard_tsp, substitution_root,
    tour_to_assignment, AssignmentVector,
};
use polyef::polyhedron::{
    enumerate_vertices, hull, poly_equal, HPoly, Sense, VPoly,
};
use polyef::projection::{project_degenerate_case, project_onto_classes, ProjectionResult};
use polyef::rational::{int, rat, RatVector, Rational};
use polyef::space::VarSpace;

use num_traits::{One, Signed, Zero};
use rand::Rng;

fn pass(criterion: usize, name: &str, started: Instant) {
    println!(
        "criterion {criterion} ({name}): pass [{} ms]",
        started.elapsed().as_millis()
    );
}

/// P of the independence example: {x1 - x2 >= 6, 0 <= x1 <= 6, 0 <= x2 <= 5}.
fn example_p() -> HPoly {
    HPoly::from_rows(
        VarSpace::flat("x", 2),
        vec![
            (vec![int(-1), int(1)], Sense::Le, int(-6)),
            (vec![int(-1), int(0)], Sense::Le, int(0)),
            (vec![int(1), int(0)], Sense::Le, int(6)),
            (vec![int(0), int(-1)], Sense::Le, int(0)),
            (vec![int(0), int(1)], Sense::Le, int(5)),
        ],
    )
    .unwrap()
}

/// Q of the independence example: {y1 + y2 = 6, y1 >= 3/2, y2 >= 0}.
fn example_q() -> HPoly {
    HPoly::from_rows(
        VarSpace::flat("y", 2),
        vec![
            (vec![int(1), int(1)], Sense::Eq, int(6)),
            (vec![int(-1), int(0)], Sense::Le, rat(-3, 2)),
            (vec![int(0), int(-1)], Sense::Le, int(0)),
        ],
    )
    .unwrap()
}

fn sum_witness() -> AffineMapSpec {
    AffineMapSpec::linear(
        RatMatrix::from_i64(&[&[1, 1], &[0, 0]]),
        VarSpace::flat("y", 2),
        VarSpace::flat("x", 2),
    )
    .unwrap()
}

#[test]
fn criterion_01_independence_example_reproduction() {
    let t = Instant::now();
    let p = example_p();
    let q = example_q();

    let vp = enumerate_vertices(&p).unwrap();
    assert_eq!(vp.vertices(), &[vec![int(6), int(0)]]);
    let vq = enumerate_vertices(&q).unwrap();
    assert_eq!(vq.vertices(), &[vec![rat(3, 2), rat(9, 2)], vec![int(6), int(0)]]);

    let common_space = VarSpace::flat("x", 2).concat(&VarSpace::flat("y", 2)).unwrap();
    let p_padded = p.embed_into(&common_space).unwrap();
    match project_onto_classes(&p_padded, &["y"]).unwrap() {
        ProjectionResult::FullSpace(d) => assert_eq!(d, 2),
        other => panic!("padded P must project to the full plane, got {}", other.describe()),
    }
    let q_padded = q.embed_into(&common_space).unwrap();
    match project_onto_classes(&q_padded, &["x"]).unwrap() {
        ProjectionResult::FullSpace(d) => assert_eq!(d, 2),
        other => panic!("padded Q must project to the full plane, got {}", other.describe()),
    }

    let witness = sum_witness();
    let def2 =
        check_ef(&PolyInput::H(&p), &q, EfDefinition::LinearMap, Some(&witness)).unwrap();
    assert!(def2.def2.is_some(), "the summing map must verify");
    let def1 = check_ef(&PolyInput::H(&p), &q, EfDefinition::Projection, None).unwrap();
    assert_eq!(def1.def1, Some(false));
    let def3 = check_ef(&PolyInput::H(&p), &q, EfDefinition::CoordinateExistence, None).unwrap();
    assert_eq!(def3.def3, Some(false));

    let rel = classify_relationship(&p, &q, &[witness]).unwrap();
    assert_eq!(rel.tag, RelationTag::IllDefined);
    pass(1, "independence example reproduction", t);
}

/// The two systems of the worked mutual-augmentation example, with the
/// nonnegativity rows stated explicitly (the printed scaling factors apply
/// to the displayed rows; the nonnegativity rows carry unit scaling).
fn worked_p1() -> HPoly {
    HPoly::from_rows(
        VarSpace::flat("x", 2),
        vec![
            (vec![int(2), int(1)], Sense::Le, int(6)),
            (vec![int(-1), int(0)], Sense::Le, int(0)),
            (vec![int(0), int(-1)], Sense::Le, int(0)),
        ],
    )
    .unwrap()
}

fn worked_p2() -> HPoly {
    HPoly::from_rows(
        VarSpace::flat("w", 3),
        vec![
            (vec![int(18), int(-1), int(0)], Sense::Le, int(23)),
            (vec![int(59), int(0), int(1)], Sense::Le, int(84)),
            (vec![int(-1), int(0), int(0)], Sense::Le, int(0)),
            (vec![int(0), int(-1), int(0)], Sense::Le, int(0)),
            (vec![int(0), int(0), int(-1)], Sense::Le, int(0)),
        ],
    )
    .unwrap()
}

#[test]
fn criterion_02_mutual_augmentation_worked_example() {
    let t = Instant::now();
    let p1 = worked_p1();
    let p2 = worked_p2();
    let mut c1 = RatMatrix::identity(3);
    c1[(0, 0)] = int(7);
    let mut c2 = RatMatrix::identity(5);
    c2[(0, 0)] = int(2);
    c2[(1, 1)] = rat(1, 2);
    let spec = AugmentationSpec::new(
        RatMatrix::from_i64(&[&[-1, 2], &[3, -4]]),
        RatMatrix::from_i64(&[&[5, -6, 7], &[-10, 9, -8]]),
        c1,
        c2,
    )
    .unwrap();
    let w = construct_mutual_augmentation(&p1, &p2, &spec).unwrap();
    assert_eq!(w.dim(), 7);

    // The three displayed row blocks, verbatim.
    let has_row = |coeffs: &[Rational], rhs: &Rational| {
        (0..w.num_rows()).any(|i| w.row(i) == coeffs && w.rhs(i) == rhs)
    };
    assert!(has_row(
        &[int(14), int(7), int(0), int(0), int(0), int(0), int(0)],
        &int(42)
    ));
    assert!(has_row(
        &[int(-1), int(2), int(5), int(-6), int(7), int(-1), int(0)],
        &int(0)
    ));
    assert!(has_row(
        &[int(3), int(-4), int(-10), int(9), int(-8), int(0), int(-1)],
        &int(0)
    ));
    assert!(has_row(
        &[int(0), int(0), int(36), int(-2), int(0), int(0), int(0)],
        &int(46)
    ));
    assert!(has_row(
        &[int(0), int(0), rat(59, 2), int(0), rat(1, 2), int(0), int(0)],
        &int(42)
    ));

    match project_onto_classes(&w, &["x"]).unwrap() {
        ProjectionResult::Polytope(h) => {
            assert!(poly_equal(&h, &p1).unwrap());
            // The pruned projection is exactly the irredundant description.
            assert_eq!(h.num_rows(), 3);
            assert!(polyef::redundancy::redundancy_report(&h).unwrap().redundant_rows.is_empty());
        }
        other => panic!("x-projection must be a polytope, got {}", other.describe()),
    }
    match project_onto_classes(&w, &["w"]).unwrap() {
        ProjectionResult::Polytope(h) => assert!(poly_equal(&h, &p2).unwrap()),
        other => panic!("w-projection must be a polyhedron, got {}", other.describe()),
    }
    pass(2, "mutual augmentation worked example", t);
}

/// One random instance of the augmentation example family: bounded X and Y
/// over disjoint classes plus linking rows made redundant by slack.
struct AugmentationInstance {
    x: HPoly,
    y: HPoly,
    linking: HPoly,
    k1: HPoly,
    k2: HPoly,
    k3: HPoly,
}

fn random_augmentation_instance(rng: &mut rand_chacha::ChaCha8Rng) -> AugmentationInstance {
    loop {
        let px = rng.gen_range(1usize..=2);
        let qy = rng.gen_range(1usize..=2);
        let x = random_bounded_hpoly(rng, "x", px, 1);
        let y = random_bounded_hpoly(rng, "y", qy, 1);
        let space = x.space().concat(y.space()).unwrap();
        let x_pad = x.embed_into(&space).unwrap();
        let y_pad = y.embed_into(&space).unwrap();
        let product = HPoly::from_rows(
            space.clone(),
            x_pad
                .rows()
                .chain(y_pad.rows())
                .map(|(r, s, b)| (r.to_vec(), s, b.clone()))
                .collect(),
        )
        .unwrap();

        let mut linking_rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
        for _ in 0..rng.gen_range(1usize..=2) {
            let bx: RatVector = (0..px).map(|_| small_rat(rng)).collect();
            let cy: RatVector = (0..qy).map(|_| small_rat(rng)).collect();
            if bx.iter().all(Zero::is_zero) || cy.iter().all(Zero::is_zero) {
                continue;
            }
            let mut coeffs = bx;
            coeffs.extend(cy);
            let rhs = match lp::maximize(&product, &coeffs).unwrap() {
                RowOptimum::Value { optimum, .. } => optimum + int(1),
                _ => continue,
            };
            linking_rows.push((coeffs, Sense::Le, rhs));
        }
        if linking_rows.is_empty() {
            continue;
        }
        let linking = HPoly::from_rows(space.clone(), linking_rows).unwrap();

        let stack = |parts: &[&HPoly]| {
            HPoly::from_rows(
                space.clone(),
                parts
                    .iter()
                    .flat_map(|p| p.rows().map(|(r, s, b)| (r.to_vec(), s, b.clone())))
                    .collect(),
            )
            .unwrap()
        };
        let k1 = stack(&[&x_pad, &linking]);
        let k2 = stack(&[&linking, &y_pad]);
        let k3 = stack(&[&x_pad, &linking, &y_pad]);

        // The flat claims need the box rows to genuinely cut the linking
        // system; regenerate in the measure-zero degenerate cases.
        if check_augmentation(&linking, &k1).unwrap()
            || check_augmentation(&linking, &k2).unwrap()
            || check_augmentation(&linking, &k3).unwrap()
        {
            continue;
        }
        return AugmentationInstance { x, y, linking, k1, k2, k3 };
    }
}

#[test]
fn criterion_03_augmentation_example_claims() {
    let t = Instant::now();
    let mut rng = rng(330);
    for _ in 0..20 {
        let inst = random_augmentation_instance(&mut rng);
        // K1 augments X, does not augment the linking system, and is not
        // even an augmentation of Y by construction.
        assert!(check_augmentation(&inst.x, &inst.k1).unwrap());
        assert!(!check_augmentation(&inst.linking, &inst.k1).unwrap());
        assert!(matches!(
            check_augmentation(&inst.y, &inst.k1),
            Err(polyef::Error::NotAugmentation(_))
        ));
        // K2 mirrors with Y.
        assert!(check_augmentation(&inst.y, &inst.k2).unwrap());
        assert!(!check_augmentation(&inst.linking, &inst.k2).unwrap());
        assert!(matches!(
            check_augmentation(&inst.x, &inst.k2),
            Err(polyef::Error::NotAugmentation(_))
        ));
        // K3 augments both X and Y but not the linking system.
        assert!(check_augmentation(&inst.x, &inst.k3).unwrap());
        assert!(check_augmentation(&inst.y, &inst.k3).unwrap());
        assert!(!check_augmentation(&inst.linking, &inst.k3).unwrap());
        // The linking system alone augments neither X nor Y.
        assert!(matches!(
            check_augmentation(&inst.x, &inst.linking),
            Err(polyef::Error::NotAugmentation(_))
        ));
        assert!(matches!(
            check_augmentation(&inst.y, &inst.linking),
            Err(polyef::Error::NotAugmentation(_))
        ));
    }
    pass(3, "augmentation example claims on 20 random instances", t);
}

#[test]
fn criterion_04_overlap_invariance_property() {
    let t = Instant::now();
    let mut rng = rng(440);
    let mut verdicts = [0usize; 2];
    for case in 0..100 {
        let dim = rng.gen_range(1usize..=2);
        let p1 = random_bounded_hpoly(&mut rng, "x", dim, 1);
        let lift_dim = rng.gen_range(1usize..=2);
        let space = p1.space().concat(&VarSpace::flat("u", lift_dim)).unwrap();

        // Half the cases lift p1 itself (an extension), half lift a shifted
        // copy (generally not one).
        let base_rows: Vec<(RatVector, Sense, Rational)> = if case % 2 == 0 {
            p1.rows().map(|(r, s, b)| (r.to_vec(), s, b.clone())).collect()
        } else {
            p1.rows()
                .map(|(r, s, b)| {
                    let bump = if s == Sense::Le { rat(1, 3) } else { int(0) };
                    (r.to_vec(), s, b - bump)
                })
                .collect()
        };
        let mut rows: Vec<(RatVector, Sense, Rational)> = base_rows
            .into_iter()
            .map(|(r, s, b)| {
                let mut row = r;
                row.extend(vec![int(0); lift_dim]);
                (row, s, b)
            })
            .collect();
        for j in 0..lift_dim {
            let mut up = vec![int(0); dim + lift_dim];
            up[dim + j] = int(1);
            rows.push((up.clone(), Sense::Le, int(1)));
            let mut down = vec![int(0); dim + lift_dim];
            down[dim + j] = int(-1);
            rows.push((down, Sense::Le, int(0)));
        }
        let Ok(p2) = HPoly::from_rows(space.clone(), rows.clone()) else {
            continue;
        };
        if lp::is_empty(&p2).is_empty() {
            continue;
        }

        // p3: a fresh bounded class plus one coupling row made redundant by
        // slack over p2 x [0,1].
        let aug_space = space.concat(&VarSpace::flat("v", 1)).unwrap();
        let mut aug_rows: Vec<(RatVector, Sense, Rational)> = rows
            .into_iter()
            .map(|(r, s, b)| {
                let mut row = r;
                row.push(int(0));
                (row, s, b)
            })
            .collect();
        let mut v_up = vec![int(0); aug_space.dim()];
        v_up[aug_space.dim() - 1] = int(1);
        aug_rows.push((v_up, Sense::Le, int(1)));
        let mut v_down = vec![int(0); aug_space.dim()];
        v_down[aug_space.dim() - 1] = int(-1);
        aug_rows.push((v_down, Sense::Le, int(0)));
        let coupling_xu: RatVector = (0..dim + lift_dim).map(|_| small_rat(&mut rng)).collect();
        let coupling_v = nonzero_small_rat(&mut rng);
        let max_xu = match lp::maximize(&p2, &coupling_xu).unwrap() {
            RowOptimum::Value { optimum, .. } => optimum,
            _ => continue,
        };
        let v_reach = if coupling_v.is_positive() { coupling_v.clone() } else { int(0) };
        let mut coupling = coupling_xu;
        coupling.push(coupling_v);
        aug_rows.push((coupling, Sense::Le, max_xu + v_reach + int(1)));
        let p3 = HPoly::from_rows(aug_space, aug_rows).unwrap();

        assert!(
            overlap_augmentation_invariance(&p1, &p2, &p3).unwrap(),
            "projection verdict changed under augmentation"
        );
        let direct = check_ef(&PolyInput::H(&p1), &p2, EfDefinition::Projection, None).unwrap();
        verdicts[direct.def1.unwrap() as usize] += 1;
    }
    assert!(verdicts[0] > 10 && verdicts[1] > 10, "both verdict kinds must occur");
    pass(4, "overlap augmentation invariance on 100 random pairs", t);
}

#[test]
fn criterion_05_independent_pairs_reject_projection_definitions() {
    let t = Instant::now();
    let mut rng = rng(550);
    for _ in 0..50 {
        let target_dim = rng.gen_range(1usize..=2);
        let target = random_bounded_hpoly(&mut rng, "x", target_dim, 1);
        let cand_dim = rng.gen_range(1usize..=2);
        let candidate = random_bounded_hpoly(&mut rng, "w", cand_dim, 1);
        assert!(independent_spaces(&PolyInput::H(&target), &PolyInput::H(&candidate)).unwrap());

        // The projection is the whole target space, never the bounded target.
        let space = target.space().concat(candidate.space()).unwrap();
        let embedded = candidate.embed_into(&space).unwrap();
        match project_onto_classes(&embedded, &["x"]).unwrap() {
            ProjectionResult::FullSpace(d) => assert_eq!(d, target.dim()),
            other => panic!("independent pair projected to {}", other.describe()),
        }
        let verdict = check_ef_all(&PolyInput::H(&target), &candidate, None).unwrap();
        assert_eq!(verdict.def1, Some(false));
        assert_eq!(verdict.def3, Some(false));
    }
    pass(5, "independent pairs reject both projection definitions, 50/50", t);
}

#[test]
fn criterion_06_mutual_augmentation_property() {
    let t = Instant::now();
    let mut rng = rng(660);
    for _ in 0..100 {
        let d1 = rng.gen_range(1usize..=2);
        let p1 = random_bounded_hpoly(&mut rng, "a", d1, 1);
        let d2 = rng.gen_range(1usize..=2);
        let p2 = random_bounded_hpoly(&mut rng, "b", d2, 1);
        let q = rng.gen_range(1usize..=2);
        let b1rows: Vec<RatVector> =
            (0..q).map(|_| (0..p1.dim()).map(|_| small_rat(&mut rng)).collect()).collect();
        let b2rows: Vec<RatVector> =
            (0..q).map(|_| (0..p2.dim()).map(|_| small_rat(&mut rng)).collect()).collect();
        let mut c1 = RatMatrix::zero(p1.num_rows(), p1.num_rows());
        for i in 0..p1.num_rows() {
            c1[(i, i)] = positive_small_rat(&mut rng);
        }
        let mut c2 = RatMatrix::zero(p2.num_rows(), p2.num_rows());
        for i in 0..p2.num_rows() {
            c2[(i, i)] = positive_small_rat(&mut rng);
        }
        let spec = AugmentationSpec::new(
            RatMatrix::from_rows(&b1rows).unwrap(),
            RatMatrix::from_rows(&b2rows).unwrap(),
            c1,
            c2,
        )
        .unwrap();
        // The construction verifies both projections internally before
        // returning; an error here is a failure of the property.
        construct_mutual_augmentation(&p1, &p2, &spec).unwrap();
    }
    pass(6, "mutual augmentation verified on 100 random pairs", t);
}

#[test]
fn criterion_07_spanning_tree_case_study() {
    let t = Instant::now();

    // Vertex counts against the exhaustive tree enumerator.
    for (n, expected) in [(3usize, 3usize), (4, 16)] {
        let (p, _) = gen_mst_edmonds(n, None).unwrap();
        let vertices = enumerate_vertices(&p).unwrap();
        assert_eq!(vertices.vertices().len(), expected);
        for v in vertices.vertices() {
            assert!(v.iter().all(|x| x.is_zero() || x.is_one()), "non-integral vertex {v:?}");
        }
        let trees = spanning_tree_vectors(n);
        assert_eq!(trees.len(), expected, "tree count must match Cayley's formula");
        let mut enumerated: Vec<RatVector> = vertices.vertices().to_vec();
        enumerated.sort();
        assert_eq!(enumerated, trees);
    }

    // The lifted formulation projects onto the subtour-elimination polytope.
    for n in [3usize, 4] {
        let (p, _) = gen_mst_edmonds(n, None).unwrap();
        let (q, _) = gen_mst_martin(n, None).unwrap();
        match project_onto_classes(&q, &["x"]).unwrap() {
            ProjectionResult::Polytope(h) => {
                assert!(poly_equal(&h, &p).unwrap(), "projection differs at n = {n}")
            }
            other => panic!("projection collapsed to {}", other.describe()),
        }
    }

    // Column redundancy of the edge class, with the documented substitution.
    let (q3, _) = gen_mst_martin(3, None).unwrap();
    let (reconstruction, reduced) = polyef::redundancy::column_redundant(&q3, "x")
        .unwrap()
        .expect("edge variables are reconstructible from the lifted ones");
    let q3_vertices = enumerate_vertices(&q3).unwrap();
    let edges = edge_list(3);
    let arcs = arc_list(3);
    let x_dim = edges.len();
    for v in q3_vertices.vertices() {
        let z_part: RatVector = v[x_dim..].to_vec();
        // The returned reconstruction reproduces the edge coordinates.
        assert_eq!(reconstruction.apply(&z_part).unwrap(), v[..x_dim].to_vec());
        // And so does the documented substitution through the edge roots.
        for (e, &(i, j)) in edges.iter().enumerate() {
            let r = substitution_root(3, (i, j));
            let col = |ii: usize, jj: usize| {
                (r - 1) * arcs.len() + arcs.iter().position(|&a| a == (ii, jj)).unwrap()
            };
            assert_eq!(&z_part[col(i, j)] + &z_part[col(j, i)], v[e]);
        }
    }
    assert_eq!(
        enumerate_vertices(&reduced).unwrap().vertices().len(),
        q3_vertices.vertices().len()
    );

    // The reduced restatement lives in a space independent of the original.
    let (p3, _) = gen_mst_edmonds(3, None).unwrap();
    let (q3r, _) = gen_mst_martin_reduced(3, None).unwrap();
    assert!(independent_spaces(&PolyInput::H(&p3), &PolyInput::H(&q3r)).unwrap());

    // Optimal values agree between the lifted model and its restatement.
    let mut rng = rng(770);
    for n in [3usize, 4] {
        for _ in 0..10 {
            let costs: RatVector =
                (0..edge_list(n).len()).map(|_| small_rat(&mut rng)).collect();
            let (_, lp_q) = gen_mst_martin(n, Some(&costs)).unwrap();
            let (_, lp_qr) = gen_mst_martin_reduced(n, Some(&costs)).unwrap();
            let out_q = lp::solve(&lp_q).unwrap();
            let out_qr = lp::solve(&lp_qr).unwrap();
            assert_eq!(out_q.status, LpStatus::Optimal);
            assert_eq!(out_qr.status, LpStatus::Optimal);
            assert_eq!(out_q.optimum, out_qr.optimum, "optima differ at n = {n}");
        }
    }
    pass(7, "spanning tree case study", t);
}

#[test]
fn criterion_08_tour_polytopes() {
    let t = Instant::now();
    let factorial = |k: usize| (1..=k).product::<usize>();
    for n in [3usize, 4, 5] {
        let expected = factorial(n - 1);

        let standard = gen_standard_tsp(n).unwrap();
        assert_eq!(standard.vertices().len(), expected);

        let ap = gen_alternate_tsp(n).unwrap();
        let ap_vertices = enumerate_vertices(&ap).unwrap();
        assert_eq!(ap_vertices.vertices().len(), expected, "assignment count at n = {n}");
        for v in ap_vertices.vertices() {
            assert!(v.iter().all(|x| x.is_zero() || x.is_one()), "fractional vertex {v:?}");
            let a = AssignmentVector::from_point(n, v).unwrap();
            let tour = assignment_to_tour(&a).unwrap();
            let back = tour_to_assignment(&tour).unwrap();
            assert_eq!(back.to_point(), *v, "assignment round trip at n = {n}");
        }

        let mut mapped: BTreeSet<RatVector> = BTreeSet::new();
        for tour in all_tours(n).unwrap() {
            let a = tour_to_assignment(&tour).unwrap();
            assert_eq!(assignment_to_tour(&a).unwrap(), tour, "tour round trip at n = {n}");
            assert!(ap.contains(&a.to_point()).unwrap());
            mapped.insert(a.to_point());
        }
        assert_eq!(mapped.len(), expected, "tour-to-assignment map must be injective");
    }
    pass(8, "tour polytopes and the visit-time bijection", t);
}

#[test]
fn criterion_09_objective_pushforward_equivalence() {
    let t = Instant::now();
    let mut rng = rng(990);
    for _ in 0..20 {
        let q = rng.gen_range(1usize..=3);
        let p = rng.gen_range(1usize..=3);
        let y_poly = random_bounded_hpoly(&mut rng, "y", q, 1);
        let mut c = RatMatrix::zero(p, q);
        for i in 0..p {
            for j in 0..q {
                c[(i, j)] = rat(rng.gen_range(0i64..=3), rng.gen_range(1i64..=3));
            }
        }
        let offset: RatVector = (0..p).map(|_| small_rat(&mut rng)).collect();
        let alpha: RatVector = (0..p).map(|_| small_rat(&mut rng)).collect();
        let map = AffineMapSpec::new(
            c.clone(),
            offset.clone(),
            y_poly.space().clone(),
            VarSpace::flat("x", p),
        )
        .unwrap();

        // The joint program: x - C y = offset, y in Y, minimize alpha . x.
        let space = VarSpace::flat("x", p).concat(y_poly.space()).unwrap();
        let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
        for i in 0..p {
            let mut row = vec![int(0); p + q];
            row[i] = int(1);
            for j in 0..q {
                row[p + j] = -c[(i, j)].clone();
            }
            rows.push((row, Sense::Eq, offset[i].clone()));
        }
        for (r, s, b) in y_poly.embed_into(&space).unwrap().rows() {
            rows.push((r.to_vec(), s, b.clone()));
        }
        let joint = HPoly::from_rows(space, rows).unwrap();
        let mut joint_obj = alpha.clone();
        joint_obj.extend(vec![int(0); q]);
        let joint_out = lp::solve(&LinProgram::new(joint_obj, joint).unwrap()).unwrap();
        assert_eq!(joint_out.status, LpStatus::Optimal);

        let (pushed, constant) = polyef::projection::pushforward_objective(&alpha, &map).unwrap();
        let small_out = lp::solve(&LinProgram::new(pushed, y_poly).unwrap()).unwrap();
        assert_eq!(small_out.status, LpStatus::Optimal);
        assert_eq!(
            joint_out.optimum.unwrap(),
            small_out.optimum.unwrap() + constant,
            "pushforward changed the exact optimum"
        );
    }
    pass(9, "objective pushforward equivalence on 20 random programs", t);
}

#[test]
fn criterion_10_projection_oracle_equivalence() {
    let t = Instant::now();
    let mut rng = rng(1010);
    for _ in 0..50 {
        let dim = rng.gen_range(2usize..=5);
        let keep_count = rng.gen_range(1usize..dim);
        let extra = rng.gen_range(0usize..=2);
        let p = random_bounded_hpoly(&mut rng, "x", dim, extra);
        let keep: BTreeSet<usize> = (0..keep_count).collect();
        let projected = polyef::projection::project_onto_columns(&p, &keep).unwrap();
        let h = projected
            .as_polytope()
            .expect("bounded input projects to a bounded polytope");
        let restricted: Vec<RatVector> = enumerate_vertices(&p)
            .unwrap()
            .vertices()
            .iter()
            .map(|v| v[..keep_count].to_vec())
            .collect();
        let oracle = hull(&VPoly::new(h.space().clone(), restricted).unwrap()).unwrap();
        assert!(poly_equal(h, &oracle).unwrap(), "projection disagrees with the vertex oracle");
    }
    pass(10, "projection agrees with the vertex oracle, 50/50", t);
}

#[test]
fn criterion_11_degenerate_projection_trichotomy() {
    let t = Instant::now();
    let mut rng = rng(1111);
    let mut empties = 0usize;
    for case in 0..30 {
        let x_dim = rng.gen_range(1usize..=2);
        let w_dim = rng.gen_range(1usize..=3);
        let space = VarSpace::flat("x", x_dim).concat(&VarSpace::flat("w", w_dim)).unwrap();
        let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
        for _ in 0..rng.gen_range(1usize..=4) {
            let mut row = vec![int(0); x_dim];
            row.extend((0..w_dim).map(|_| small_rat(&mut rng)));
            rows.push((row, Sense::Le, small_rat(&mut rng)));
        }
        if case % 2 == 0 {
            // Plant a contradiction: g . w <= -1 and -g . w <= 0.
            let mut g = vec![int(0); x_dim];
            g.extend((0..w_dim).map(|_| small_rat(&mut rng)));
            let mut neg: RatVector = g.iter().map(|c| -c).collect();
            rows.push((g, Sense::Le, int(-1)));
            neg[0] = int(0);
            rows.push((neg, Sense::Le, int(0)));
        }
        let u = HPoly::from_rows(space, rows).unwrap();
        let fast = project_degenerate_case(&u, x_dim).unwrap();
        let general = project_onto_classes(&u, &["x"]).unwrap();
        match (&fast, &general) {
            (ProjectionResult::FullSpace(a), ProjectionResult::FullSpace(b)) => {
                assert_eq!(a, b);
            }
            (ProjectionResult::Empty(witness), ProjectionResult::Empty(_)) => {
                empties += 1;
                assert!(lp::verify_farkas(&u, witness), "invalid emptiness witness");
            }
            other => panic!("trichotomy mismatch: {other:?}"),
        }
    }
    assert!(empties >= 5, "the empty branch must be exercised");
    pass(11, "degenerate projection trichotomy on 30 random systems", t);
}
