//! The one-shot verification suite: reproduces the worked examples and the
//! small spanning-tree case study, deterministically.
//!
//! Randomized sub-checks draw from a ChaCha stream seeded by `--seed`; the
//! seed is printed in the report header, so two runs with equal seeds emit
//! identical bytes.

use std::io::Write;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::SeedableRng;

use polyef::ef::{
    check_augmentation, check_ef, classify_relationship, construct_mutual_augmentation,
    independent_spaces, AugmentationSpec, EfDefinition, PolyInput, RelationTag,
};
use polyef::lp::{self, LpStatus, RowOptimum};
use polyef::map::AffineMapSpec;
use polyef::matrix::RatMatrix;
use polyef::models::{
    all_tours, assignment_to_tour, edge_list, gen_alternate_tsp, gen_mst_edmonds, gen_mst_martin,
    gen_mst_martin_reduced, gen_standard_tsp, tour_to_assignment,
};
use polyef::polyhedron::{enumerate_vertices, poly_equal, HPoly, Sense};
use polyef::projection::{project_onto_classes, ProjectionResult};
use polyef::rational::{int, rat, RatVector, Rational};
use polyef::redundancy::column_redundant;
use polyef::space::VarSpace;

type CheckResult = Result<(), String>;
type Check = (&'static str, Box<dyn Fn() -> CheckResult>);

fn fail(msg: impl Into<String>) -> CheckResult {
    Err(msg.into())
}

fn ok_if(cond: bool, msg: &str) -> CheckResult {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

fn point_p() -> HPoly {
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
    .expect("fixture")
}

fn segment_q() -> HPoly {
    HPoly::from_rows(
        VarSpace::flat("y", 2),
        vec![
            (vec![int(1), int(1)], Sense::Eq, int(6)),
            (vec![int(-1), int(0)], Sense::Le, rat(-3, 2)),
            (vec![int(0), int(-1)], Sense::Le, int(0)),
        ],
    )
    .expect("fixture")
}

fn sum_witness() -> AffineMapSpec {
    AffineMapSpec::linear(
        RatMatrix::from_i64(&[&[1, 1], &[0, 0]]),
        VarSpace::flat("y", 2),
        VarSpace::flat("x", 2),
    )
    .expect("fixture")
}

fn check_point_and_segment_vertices() -> CheckResult {
    let vp = enumerate_vertices(&point_p()).map_err(|e| e.to_string())?;
    ok_if(vp.vertices() == [vec![int(6), int(0)]], "P must be the single point (6, 0)")?;
    let vq = enumerate_vertices(&segment_q()).map_err(|e| e.to_string())?;
    ok_if(
        vq.vertices() == [vec![rat(3, 2), rat(9, 2)], vec![int(6), int(0)]],
        "Q must be the segment (3/2, 9/2)-(6, 0)",
    )
}

fn check_padded_projections_are_full() -> CheckResult {
    let common = VarSpace::flat("x", 2).concat(&VarSpace::flat("y", 2)).map_err(|e| e.to_string())?;
    for (poly, keep) in [(point_p(), "y"), (segment_q(), "x")] {
        let padded = poly.embed_into(&common).map_err(|e| e.to_string())?;
        match project_onto_classes(&padded, &[keep]).map_err(|e| e.to_string())? {
            ProjectionResult::FullSpace(2) => {}
            other => return fail(format!("expected FullSpace(2), got {}", other.describe())),
        }
    }
    Ok(())
}

fn check_independence_of_the_pair() -> CheckResult {
    let independent =
        independent_spaces(&PolyInput::H(&point_p()), &PolyInput::H(&segment_q()))
            .map_err(|e| e.to_string())?;
    ok_if(independent, "P and Q must be independent")
}

fn check_definition_disagreement() -> CheckResult {
    let p = point_p();
    let q = segment_q();
    let d1 = check_ef(&PolyInput::H(&p), &q, EfDefinition::Projection, None)
        .map_err(|e| e.to_string())?;
    ok_if(d1.def1 == Some(false), "projection definition must reject")?;
    let d3 = check_ef(&PolyInput::H(&p), &q, EfDefinition::CoordinateExistence, None)
        .map_err(|e| e.to_string())?;
    ok_if(d3.def3 == Some(false), "iff definition must reject")?;
    let witness = sum_witness();
    let d2 = check_ef(&PolyInput::H(&p), &q, EfDefinition::LinearMap, Some(&witness))
        .map_err(|e| e.to_string())?;
    ok_if(d2.def2.is_some(), "the summing witness must verify")
}

fn check_classification_is_ill_defined() -> CheckResult {
    let rel = classify_relationship(&point_p(), &segment_q(), &[sum_witness()])
        .map_err(|e| e.to_string())?;
    ok_if(rel.tag == RelationTag::IllDefined, "relationship must classify as ill-defined")
}

fn check_worked_mutual_augmentation() -> CheckResult {
    let p1 = HPoly::from_rows(
        VarSpace::flat("x", 2),
        vec![
            (vec![int(2), int(1)], Sense::Le, int(6)),
            (vec![int(-1), int(0)], Sense::Le, int(0)),
            (vec![int(0), int(-1)], Sense::Le, int(0)),
        ],
    )
    .map_err(|e| e.to_string())?;
    let p2 = HPoly::from_rows(
        VarSpace::flat("w", 3),
        vec![
            (vec![int(18), int(-1), int(0)], Sense::Le, int(23)),
            (vec![int(59), int(0), int(1)], Sense::Le, int(84)),
            (vec![int(-1), int(0), int(0)], Sense::Le, int(0)),
            (vec![int(0), int(-1), int(0)], Sense::Le, int(0)),
            (vec![int(0), int(0), int(-1)], Sense::Le, int(0)),
        ],
    )
    .map_err(|e| e.to_string())?;
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
    .map_err(|e| e.to_string())?;
    let w = construct_mutual_augmentation(&p1, &p2, &spec).map_err(|e| e.to_string())?;
    match project_onto_classes(&w, &["x"]).map_err(|e| e.to_string())? {
        ProjectionResult::Polytope(h) => {
            ok_if(poly_equal(&h, &p1).map_err(|e| e.to_string())?, "x-projection must equal P1")?
        }
        other => return fail(format!("x-projection collapsed to {}", other.describe())),
    }
    match project_onto_classes(&w, &["w"]).map_err(|e| e.to_string())? {
        ProjectionResult::Polytope(h) => {
            ok_if(poly_equal(&h, &p2).map_err(|e| e.to_string())?, "w-projection must equal P2")
        }
        other => fail(format!("w-projection collapsed to {}", other.describe())),
    }
}

fn check_augmentation_claims(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let x = random_box(&mut rng, "x", 2);
        let y = random_box(&mut rng, "y", 2);
        let space = x.space().concat(y.space()).map_err(|e| e.to_string())?;
        let x_pad = x.embed_into(&space).map_err(|e| e.to_string())?;
        let y_pad = y.embed_into(&space).map_err(|e| e.to_string())?;
        let product = stack(&space, &[&x_pad, &y_pad]);
        let coeffs: RatVector = (0..4).map(|_| int(rng.gen_range(-3i64..=3))).collect();
        if coeffs[..2].iter().all(Zero::is_zero) || coeffs[2..].iter().all(Zero::is_zero) {
            continue;
        }
        let rhs = match lp::maximize(&product, &coeffs).map_err(|e| e.to_string())? {
            RowOptimum::Value { optimum, .. } => optimum + int(1),
            _ => return fail("product of boxes must have bounded rows"),
        };
        let linking =
            HPoly::from_rows(space.clone(), vec![(coeffs, Sense::Le, rhs)]).map_err(|e| e.to_string())?;
        let k1 = stack(&space, &[&x_pad, &linking]);
        let k3 = stack(&space, &[&x_pad, &linking, &y_pad]);
        ok_if(
            check_augmentation(&x, &k1).map_err(|e| e.to_string())?,
            "the lifted system must augment its base",
        )?;
        ok_if(
            check_augmentation(&x, &k3).map_err(|e| e.to_string())?
                && check_augmentation(&y, &k3).map_err(|e| e.to_string())?,
            "the full stack must augment both bases",
        )?;
        ok_if(
            matches!(check_augmentation(&x, &linking), Err(polyef::Error::NotAugmentation(_))),
            "the linking system alone must not qualify",
        )?;
    }
    Ok(())
}

fn random_box(rng: &mut ChaCha8Rng, class: &str, dim: usize) -> HPoly {
    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    for j in 0..dim {
        let lo = rng.gen_range(-2i64..=0);
        let hi = lo + rng.gen_range(1i64..=3);
        let mut up = vec![int(0); dim];
        up[j] = int(1);
        rows.push((up, Sense::Le, int(hi)));
        let mut down = vec![int(0); dim];
        down[j] = int(-1);
        rows.push((down, Sense::Le, int(-lo)));
    }
    HPoly::from_rows(VarSpace::flat(class, dim), rows).expect("boxes are well formed")
}

fn stack(space: &VarSpace, parts: &[&HPoly]) -> HPoly {
    HPoly::from_rows(
        space.clone(),
        parts
            .iter()
            .flat_map(|p| p.rows().map(|(r, s, b)| (r.to_vec(), s, b.clone())))
            .collect(),
    )
    .expect("stacked rows share the space")
}

fn check_spanning_tree_vertices() -> CheckResult {
    let (p, _) = gen_mst_edmonds(3, None).map_err(|e| e.to_string())?;
    let v = enumerate_vertices(&p).map_err(|e| e.to_string())?;
    ok_if(v.vertices().len() == 3, "the triangle has exactly 3 spanning trees")?;
    ok_if(
        v.vertices().iter().all(|x| x.iter().all(|c| c.is_zero() || c.is_one())),
        "spanning-tree vertices must be integral",
    )
}

fn check_spanning_tree_projection() -> CheckResult {
    let (p, _) = gen_mst_edmonds(3, None).map_err(|e| e.to_string())?;
    let (q, _) = gen_mst_martin(3, None).map_err(|e| e.to_string())?;
    match project_onto_classes(&q, &["x"]).map_err(|e| e.to_string())? {
        ProjectionResult::Polytope(h) => ok_if(
            poly_equal(&h, &p).map_err(|e| e.to_string())?,
            "the lifted model must project onto the subtour-elimination polytope",
        ),
        other => fail(format!("projection collapsed to {}", other.describe())),
    }
}

fn check_spanning_tree_column_redundancy() -> CheckResult {
    let (q, _) = gen_mst_martin(3, None).map_err(|e| e.to_string())?;
    let Some((map, reduced)) = column_redundant(&q, "x").map_err(|e| e.to_string())? else {
        return fail("edge variables must be reconstructible");
    };
    let vertices = enumerate_vertices(&q).map_err(|e| e.to_string())?;
    for v in vertices.vertices() {
        let z_part = v[3..].to_vec();
        if map.apply(&z_part).map_err(|e| e.to_string())? != v[..3] {
            return fail("reconstruction must reproduce the edge coordinates");
        }
    }
    ok_if(
        enumerate_vertices(&reduced).map_err(|e| e.to_string())?.vertices().len()
            == vertices.vertices().len(),
        "the reduced polytope must keep the vertex count",
    )
}

fn check_spanning_tree_independence() -> CheckResult {
    let (p, _) = gen_mst_edmonds(3, None).map_err(|e| e.to_string())?;
    let (qr, _) = gen_mst_martin_reduced(3, None).map_err(|e| e.to_string())?;
    ok_if(
        independent_spaces(&PolyInput::H(&p), &PolyInput::H(&qr)).map_err(|e| e.to_string())?,
        "the reduced restatement must live in an independent space",
    )
}

fn check_spanning_tree_lp_agreement(seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..3 {
        let costs: RatVector =
            (0..edge_list(3).len()).map(|_| int(rng.gen_range(-4i64..=4))).collect();
        let (_, lp_q) = gen_mst_martin(3, Some(&costs)).map_err(|e| e.to_string())?;
        let (_, lp_qr) = gen_mst_martin_reduced(3, Some(&costs)).map_err(|e| e.to_string())?;
        let a = lp::solve(&lp_q).map_err(|e| e.to_string())?;
        let b = lp::solve(&lp_qr).map_err(|e| e.to_string())?;
        if a.status != LpStatus::Optimal || b.status != LpStatus::Optimal {
            return fail("both programs must be solvable");
        }
        if a.optimum != b.optimum {
            return fail("optimal values must agree after substitution");
        }
    }
    Ok(())
}

fn check_tour_bijection() -> CheckResult {
    for n in [3usize, 4] {
        let expected = (1..n).product::<usize>();
        let standard = gen_standard_tsp(n).map_err(|e| e.to_string())?;
        ok_if(standard.vertices().len() == expected, "tour count must be (n-1)!")?;
        let ap = gen_alternate_tsp(n).map_err(|e| e.to_string())?;
        let ap_vertices = enumerate_vertices(&ap).map_err(|e| e.to_string())?;
        ok_if(ap_vertices.vertices().len() == expected, "assignment count must be (n-1)!")?;
        for tour in all_tours(n).map_err(|e| e.to_string())? {
            let a = tour_to_assignment(&tour).map_err(|e| e.to_string())?;
            if assignment_to_tour(&a).map_err(|e| e.to_string())? != tour {
                return fail("tour round trip must be the identity");
            }
        }
    }
    Ok(())
}

/// Runs every check (optionally filtered by substring), prints one line per
/// check plus a summary, and returns the exit code.
pub fn run_verify<W: Write>(
    filter: Option<&str>,
    seed: u64,
    out: &mut W,
) -> std::io::Result<i32> {
    let checks: Vec<Check> = vec![
        ("example-vertices", Box::new(check_point_and_segment_vertices)),
        ("example-projections-full", Box::new(check_padded_projections_are_full)),
        ("example-independence", Box::new(check_independence_of_the_pair)),
        ("example-definition-disagreement", Box::new(check_definition_disagreement)),
        ("example-classification", Box::new(check_classification_is_ill_defined)),
        ("example-augmentation-claims", Box::new(move || check_augmentation_claims(seed))),
        ("example-mutual-augmentation", Box::new(check_worked_mutual_augmentation)),
        ("mstp3-vertices", Box::new(check_spanning_tree_vertices)),
        ("mstp3-projection", Box::new(check_spanning_tree_projection)),
        ("mstp3-column-redundancy", Box::new(check_spanning_tree_column_redundancy)),
        ("mstp3-independence", Box::new(check_spanning_tree_independence)),
        ("mstp3-lp-agreement", Box::new(move || check_spanning_tree_lp_agreement(seed))),
        ("tsp-bijection", Box::new(check_tour_bijection)),
    ];

    writeln!(out, "command: verify-paper")?;
    writeln!(out, "seed: {seed}")?;
    let mut ran = 0usize;
    let mut failed = 0usize;
    for (name, check) in &checks {
        if let Some(f) = filter {
            if !name.contains(f) {
                continue;
            }
        }
        ran += 1;
        match check() {
            Ok(()) => writeln!(out, "check: {name}: pass")?,
            Err(reason) => {
                failed += 1;
                writeln!(out, "check: {name}: fail ({reason})")?;
            }
        }
    }
    writeln!(out, "checks: {ran} run, {failed} failed")?;
    writeln!(out, "result: {}", if failed == 0 { "pass" } else { "fail" })?;
    Ok(if failed == 0 { 0 } else { 1 })
}
