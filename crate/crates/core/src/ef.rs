//! Extension relationships between polytopes.
//!
//! Three competing readings of "U is an extended formulation of X" are
//! implemented side by side: exact projection equality, linear-map image
//! equality via a supplied witness, and the coordinate-existence
//! biconditional. For polytopes over disjoint variable classes the first and
//! third always reject while a witness map may still verify the second; the
//! classifier surfaces that contradiction as an ill-defined relationship
//! instead of picking a side.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lp;
use crate::map::AffineMapSpec;
use crate::matrix::RatMatrix;
use crate::polyhedron::{
    enumerate_vertices, hull, included_in, is_bounded, poly_equal, Boundedness, HPoly, Sense,
    VPoly,
};
use crate::projection::{project_onto_columns, ProjectionResult};
use crate::rational::{int, RatVector, Rational};
use crate::space::VarSpace;

/// A polytope given in either representation.
#[derive(Clone, Copy, Debug)]
pub enum PolyInput<'a> {
    H(&'a HPoly),
    V(&'a VPoly),
}

impl<'a> PolyInput<'a> {
    pub fn space(&self) -> &VarSpace {
        match self {
            PolyInput::H(h) => h.space(),
            PolyInput::V(v) => v.space(),
        }
    }

    fn is_empty_set(&self) -> bool {
        match self {
            PolyInput::H(h) => lp::is_empty(h).is_empty(),
            PolyInput::V(v) => v.is_empty(),
        }
    }

    fn to_hpoly(self) -> Result<HPoly> {
        match self {
            PolyInput::H(h) => Ok((*h).clone()),
            PolyInput::V(v) => hull(v),
        }
    }

    fn to_vertices(self) -> Result<VPoly> {
        match self {
            PolyInput::H(h) => enumerate_vertices(h),
            PolyInput::V(v) => Ok((*v).clone()),
        }
    }

    /// Classes that actually constrain anything: for an H-polyhedron a class
    /// counts only if some row has a nonzero coefficient on it.
    fn descriptive_classes(&self) -> Vec<String> {
        match self {
            PolyInput::H(h) => h
                .space()
                .classes()
                .into_iter()
                .filter(|class| {
                    let cols = h.space().columns_of_classes(&[class]).expect("own class");
                    cols.iter().any(|&c| (0..h.num_rows()).any(|i| !h.row(i)[c].is_zero()))
                })
                .map(str::to_string)
                .collect(),
            PolyInput::V(v) => v.space().classes().into_iter().map(str::to_string).collect(),
        }
    }
}

/// Which extension-relationship definition to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EfDefinition {
    /// Projection onto the target variables equals the target.
    Projection,
    /// The target is the image of the candidate under a supplied linear map.
    LinearMap,
    /// Membership in the target is equivalent to the existence of a lift.
    CoordinateExistence,
}

impl EfDefinition {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(EfDefinition::Projection),
            2 => Some(EfDefinition::LinearMap),
            3 => Some(EfDefinition::CoordinateExistence),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            EfDefinition::Projection => 1,
            EfDefinition::LinearMap => 2,
            EfDefinition::CoordinateExistence => 3,
        }
    }
}

/// Structured outcome of the extension checks. A `None` entry means the
/// check was not evaluated; `def2` holds the witness only when it verified.
#[derive(Clone, Debug, Default)]
pub struct EFVerdict {
    pub def1: Option<bool>,
    pub def2: Option<AffineMapSpec>,
    pub def3: Option<bool>,
    pub notes: Vec<String>,
}

impl EFVerdict {
    pub fn holds(&self, definition: EfDefinition) -> bool {
        match definition {
            EfDefinition::Projection => self.def1 == Some(true),
            EfDefinition::LinearMap => self.def2.is_some(),
            EfDefinition::CoordinateExistence => self.def3 == Some(true),
        }
    }
}

/// Runs one definition's check of "candidate extends target".
///
/// The candidate is first restated over the union of both variable sets
/// (target variables first, zero coefficients on the ones it lacks), so the
/// check is meaningful for disjoint-class pairs as well. Definition 2
/// requires an explicit witness whose domain is the candidate's own space;
/// witness search is out of scope, so its absence is an error, not a no.
pub fn check_ef(
    target: &PolyInput,
    candidate: &HPoly,
    definition: EfDefinition,
    witness: Option<&AffineMapSpec>,
) -> Result<EFVerdict> {
    let mut verdict = EFVerdict::default();
    match definition {
        EfDefinition::Projection => {
            let proj = project_to_target(target, candidate)?;
            let (ok, mut notes) = projection_equals_target(&proj, target)?;
            verdict.def1 = Some(ok);
            verdict.notes.append(&mut notes);
        }
        EfDefinition::CoordinateExistence => {
            let proj = project_to_target(target, candidate)?;
            let (ok, mut notes) = iff_condition(&proj, target)?;
            verdict.def3 = Some(ok);
            verdict.notes.append(&mut notes);
        }
        EfDefinition::LinearMap => {
            let w = witness.ok_or(Error::MissingWitness)?;
            let (ok, mut notes) = witness_verifies(target, candidate, w)?;
            if ok {
                verdict.def2 = Some(w.clone());
            }
            verdict.notes.append(&mut notes);
        }
    }
    Ok(verdict)
}

/// Evaluates definitions 1 and 3 (sharing one projection) and, when a
/// witness is supplied, definition 2 as well.
pub fn check_ef_all(
    target: &PolyInput,
    candidate: &HPoly,
    witness: Option<&AffineMapSpec>,
) -> Result<EFVerdict> {
    let mut verdict = EFVerdict::default();
    let proj = project_to_target(target, candidate)?;
    let (ok1, mut notes1) = projection_equals_target(&proj, target)?;
    let (ok3, mut notes3) = iff_condition(&proj, target)?;
    verdict.def1 = Some(ok1);
    verdict.def3 = Some(ok3);
    verdict.notes.append(&mut notes1);
    verdict.notes.append(&mut notes3);
    if let Some(w) = witness {
        let (ok2, mut notes2) = witness_verifies(target, candidate, w)?;
        if ok2 {
            verdict.def2 = Some(w.clone());
        }
        verdict.notes.append(&mut notes2);
    }
    Ok(verdict)
}

/// Projects the candidate onto exactly the target's variables, embedding the
/// candidate into the combined space first when it lacks some of them.
fn project_to_target(target: &PolyInput, candidate: &HPoly) -> Result<ProjectionResult> {
    let t_space = target.space();
    let has_all_target_vars =
        t_space.vars().iter().all(|v| candidate.space().position(v).is_some());
    let embedded;
    let view = if has_all_target_vars {
        candidate
    } else {
        let mut vars = t_space.vars().to_vec();
        for v in candidate.space().vars() {
            if t_space.position(v).is_none() {
                vars.push(v.clone());
            }
        }
        let combined = VarSpace::new(vars)?;
        embedded = candidate.embed_into(&combined)?;
        &embedded
    };
    let keep: std::collections::BTreeSet<usize> = t_space
        .vars()
        .iter()
        .map(|v| view.space().position(v).expect("target variable present after embedding"))
        .collect();
    project_onto_columns(view, &keep)
}

fn aligned_target_h(target: &PolyInput) -> Result<HPoly> {
    let h = target.to_hpoly()?;
    debug_assert_eq!(h.space(), target.space());
    Ok(h)
}

fn projection_equals_target(
    proj: &ProjectionResult,
    target: &PolyInput,
) -> Result<(bool, Vec<String>)> {
    let target_empty = target.is_empty_set();
    match proj {
        ProjectionResult::Empty(_) => {
            Ok((target_empty, vec!["projection: empty".to_string()]))
        }
        ProjectionResult::FullSpace(d) => {
            let note = format!("projection = FullSpace({d})");
            if target_empty {
                return Ok((false, vec![note]));
            }
            let target_h = aligned_target_h(target)?;
            let equal = poly_equal(&target_h, &HPoly::full(target_h.space().clone()))?;
            Ok((equal, vec![note]))
        }
        ProjectionResult::Polytope(h) => {
            if target_empty {
                return Ok((false, vec!["projection nonempty, target empty".to_string()]));
            }
            let target_h = aligned_target_h(target)?;
            let aligned = align_to_space(h, target_h.space())?;
            let equal = poly_equal(&aligned, &target_h)?;
            Ok((equal, vec![format!("projection: {}", if equal { "equals target" } else { "differs from target" })]))
        }
    }
}

/// Both implications of "x in target iff a lift exists": the forward one is
/// target-inside-projection, the reverse is projection-inside-target. The
/// reverse is what fails for disjoint-class pairs: the projection is the
/// whole space while the target is bounded.
fn iff_condition(proj: &ProjectionResult, target: &PolyInput) -> Result<(bool, Vec<String>)> {
    let target_empty = target.is_empty_set();
    let (forward, reverse, note) = match proj {
        ProjectionResult::Empty(_) => (target_empty, true, "projection: empty".to_string()),
        ProjectionResult::FullSpace(d) => {
            let reverse = if target_empty {
                false
            } else {
                let target_h = aligned_target_h(target)?;
                poly_equal(&target_h, &HPoly::full(target_h.space().clone()))?
            };
            (true, reverse, format!("projection = FullSpace({d})"))
        }
        ProjectionResult::Polytope(h) => {
            if target_empty {
                (true, false, "projection nonempty, target empty".to_string())
            } else {
                let target_h = aligned_target_h(target)?;
                let aligned = align_to_space(h, target_h.space())?;
                let fwd = included_in(&target_h, &aligned)?;
                let rev = included_in(&aligned, &target_h)?;
                (fwd, rev, "projection: proper polyhedron".to_string())
            }
        }
    };
    let mut notes = vec![note];
    if !forward {
        notes.push("forward implication fails: a target point has no lift".to_string());
    }
    if !reverse {
        notes.push("reverse implication fails: a lifted point lies outside the target".to_string());
    }
    Ok((forward && reverse, notes))
}

/// Verifies a definition-2 witness: the image of the candidate's vertex set
/// under the map must span exactly the target. Needs a bounded candidate.
fn witness_verifies(
    target: &PolyInput,
    candidate: &HPoly,
    witness: &AffineMapSpec,
) -> Result<(bool, Vec<String>)> {
    if &witness.domain != candidate.space() {
        return Err(Error::SpaceMismatch("witness domain must be the candidate's space"));
    }
    if &witness.codomain != target.space() {
        return Err(Error::SpaceMismatch("witness codomain must be the target's space"));
    }
    if let Boundedness::Unbounded { ray } = is_bounded(candidate)? {
        return Err(Error::Unbounded { context: "definition-2 witness check", ray });
    }
    let candidate_vertices = enumerate_vertices(candidate)?;
    let images: Vec<RatVector> = candidate_vertices
        .vertices()
        .iter()
        .map(|v| witness.apply(v))
        .collect::<Result<_>>()?;
    let image_poly = VPoly::new(target.space().clone(), images)?;
    let target_vertices = target.to_vertices()?;
    if image_poly.is_empty() || target_vertices.is_empty() {
        let ok = image_poly.is_empty() && target_vertices.is_empty();
        return Ok((ok, vec!["witness: degenerate empty side".to_string()]));
    }
    for x in image_poly.vertices() {
        if !target_vertices.contains_point(x)? {
            return Ok((false, vec![format!("witness image point outside target")]));
        }
    }
    for x in target_vertices.vertices() {
        if !image_poly.contains_point(x)? {
            return Ok((false, vec![format!("target point outside witness image")]));
        }
    }
    Ok((true, vec!["witness verified: image equals target".to_string()]))
}

/// Permutes columns so `h` is stated over `target` (same variables required).
fn align_to_space(h: &HPoly, target: &VarSpace) -> Result<HPoly> {
    if h.space() == target {
        return Ok(h.clone());
    }
    if h.dim() != target.dim() {
        return Err(Error::SpaceMismatch("cannot align spaces of different dimension"));
    }
    let perm: Vec<usize> = target
        .vars()
        .iter()
        .map(|v| {
            h.space()
                .position(v)
                .ok_or_else(|| Error::UnknownClass(format!("{v} missing while aligning spaces")))
        })
        .collect::<Result<_>>()?;
    let mut a = RatMatrix::zero(h.num_rows(), h.dim());
    for i in 0..h.num_rows() {
        for (jt, &jh) in perm.iter().enumerate() {
            a[(i, jt)] = h.row(i)[jh].clone();
        }
    }
    HPoly::new(
        target.clone(),
        a,
        h.rhs_vec().clone(),
        (0..h.num_rows()).map(|i| h.sense(i)).collect(),
    )
}

/// Disjointness of the descriptive variable classes. When both operands are
/// stated over one common space, the label test is cross-checked against the
/// projection characterization (each polytope must project to the full space
/// of the other's coordinates, in exactly one of the two pairings); the two
/// tests agreeing is part of the contract.
pub fn independent_spaces(p: &PolyInput, q: &PolyInput) -> Result<bool> {
    let cp = p.descriptive_classes();
    let cq = q.descriptive_classes();
    let disjoint = cp.iter().all(|c| !cq.contains(c));
    if p.space() == q.space() && disjoint && !p.is_empty_set() && !q.is_empty_set() {
        let all: Vec<String> = p.space().classes().into_iter().map(str::to_string).collect();
        let part_p: Vec<&str> = all.iter().filter(|c| cp.contains(c)).map(|s| s.as_str()).collect();
        let part_rest: Vec<&str> =
            all.iter().filter(|c| !cp.contains(c)).map(|s| s.as_str()).collect();
        if !part_p.is_empty() && !part_rest.is_empty() {
            let p_h = p.to_hpoly()?;
            let q_h = q.to_hpoly()?;
            let cond_own = projects_to_full(&p_h, &part_p)? && projects_to_full(&q_h, &part_rest)?;
            let cond_foreign =
                projects_to_full(&p_h, &part_rest)? && projects_to_full(&q_h, &part_p)?;
            if cond_own == cond_foreign {
                return Err(Error::Internal(
                    "independence cross-check disagrees with the class-label test".into(),
                ));
            }
        }
    }
    Ok(disjoint)
}

fn projects_to_full(h: &HPoly, classes: &[&str]) -> Result<bool> {
    Ok(crate::projection::project_onto_classes(h, classes)?.is_full_space())
}

/// Is `candidate` an augmentation of `base`: does it restate every base row
/// verbatim (same coefficients on base variables, zeros elsewhere, same
/// sense and rhs) and project back onto exactly the base?
///
/// A missing variable or row is an error (the candidate is not an
/// augmentation by construction); added rows that cut into the base make the
/// answer `false`.
pub fn check_augmentation(base: &HPoly, candidate: &HPoly) -> Result<bool> {
    if lp::is_empty(base).is_empty() {
        return Err(Error::EmptyPolyhedron("check_augmentation"));
    }
    let positions: Vec<usize> = base
        .space()
        .vars()
        .iter()
        .map(|v| {
            candidate
                .space()
                .position(v)
                .ok_or_else(|| Error::NotAugmentation(format!("variable {v} is absent")))
        })
        .collect::<Result<_>>()?;
    let foreign: Vec<usize> =
        (0..candidate.dim()).filter(|c| !positions.contains(c)).collect();
    for bi in 0..base.num_rows() {
        let found = (0..candidate.num_rows()).any(|ci| {
            candidate.sense(ci) == base.sense(bi)
                && candidate.rhs(ci) == base.rhs(bi)
                && positions
                    .iter()
                    .enumerate()
                    .all(|(j, &pc)| candidate.row(ci)[pc] == base.row(bi)[j])
                && foreign.iter().all(|&fc| candidate.row(ci)[fc].is_zero())
        });
        if !found {
            return Err(Error::NotAugmentation(format!("base row {bi} does not appear verbatim")));
        }
    }
    let keep: std::collections::BTreeSet<usize> = positions.iter().copied().collect();
    match project_onto_columns(candidate, &keep)? {
        ProjectionResult::Empty(_) => Ok(false),
        ProjectionResult::FullSpace(_) => {
            Ok(poly_equal(base, &HPoly::full(base.space().clone()))?)
        }
        ProjectionResult::Polytope(h) => {
            let aligned = align_to_space(&h, base.space())?;
            poly_equal(&aligned, base)
        }
    }
}

/// `check_augmentation` with the by-construction failures collapsed to `false`.
pub fn is_augmentation(base: &HPoly, candidate: &HPoly) -> bool {
    matches!(check_augmentation(base, candidate), Ok(true))
}

/// Construction recipe for a mutual augmentation: scaled copies of the two
/// systems, coupling rows absorbed by fresh slack variables.
#[derive(Clone, Debug)]
pub struct AugmentationSpec {
    pub b1: RatMatrix,
    pub b2: RatMatrix,
    pub c1: RatMatrix,
    pub c2: RatMatrix,
    pub slack_count: usize,
}

impl AugmentationSpec {
    /// Validates shape: `b1`, `b2` share a row count (the slack count) and
    /// `c1`, `c2` are square diagonal matrices with nonzero diagonals.
    pub fn new(b1: RatMatrix, b2: RatMatrix, c1: RatMatrix, c2: RatMatrix) -> Result<Self> {
        if b1.rows() != b2.rows() {
            return Err(Error::BadAugmentationSpec(format!(
                "coupling blocks have {} and {} rows",
                b1.rows(),
                b2.rows()
            )));
        }
        for (name, c) in [("c1", &c1), ("c2", &c2)] {
            if c.rows() != c.cols() {
                return Err(Error::BadAugmentationSpec(format!("{name} is not square")));
            }
            for i in 0..c.rows() {
                for j in 0..c.cols() {
                    if i == j && c[(i, j)].is_zero() {
                        return Err(Error::BadAugmentationSpec(format!(
                            "{name} has a zero diagonal entry at {i}"
                        )));
                    }
                    if i != j && !c[(i, j)].is_zero() {
                        return Err(Error::BadAugmentationSpec(format!("{name} is not diagonal")));
                    }
                }
            }
        }
        let slack_count = b1.rows();
        Ok(Self { b1, b2, c1, c2, slack_count })
    }
}

/// Builds the combined system
/// `{(x1, x2, u) : C1 A1 x1 <= C1 a1; B1 x1 + B2 x2 - u <= 0; C2 A2 x2 <= C2 a2; u >= 0}`
/// over the two inputs' disjoint spaces plus a fresh slack class `u`, and
/// verifies before returning that it projects back onto each input exactly.
///
/// The scaling matrices must be positive on `<=` rows (a negative scale
/// would flip the inequality and change the set); nonzero suffices on
/// equality rows.
pub fn construct_mutual_augmentation(
    p1: &HPoly,
    p2: &HPoly,
    spec: &AugmentationSpec,
) -> Result<HPoly> {
    if lp::is_empty(p1).is_empty() {
        return Err(Error::EmptyPolyhedron("construct_mutual_augmentation: first operand"));
    }
    if lp::is_empty(p2).is_empty() {
        return Err(Error::EmptyPolyhedron("construct_mutual_augmentation: second operand"));
    }
    if !independent_spaces(&PolyInput::H(p1), &PolyInput::H(p2))? {
        return Err(Error::SpaceMismatch(
            "construct_mutual_augmentation requires independent spaces",
        ));
    }
    if p1.space().class_set().intersection(&p2.space().class_set()).next().is_some() {
        return Err(Error::SpaceMismatch(
            "construct_mutual_augmentation requires disjoint class labels",
        ));
    }
    let q = spec.slack_count;
    if spec.b1.cols() != p1.dim() || spec.b2.cols() != p2.dim() {
        return Err(Error::BadAugmentationSpec(format!(
            "coupling blocks are {}x{} and {}x{}, expected column counts {} and {}",
            spec.b1.rows(),
            spec.b1.cols(),
            spec.b2.rows(),
            spec.b2.cols(),
            p1.dim(),
            p2.dim()
        )));
    }
    if spec.c1.rows() != p1.num_rows() || spec.c2.rows() != p2.num_rows() {
        return Err(Error::BadAugmentationSpec(format!(
            "scaling blocks cover {} and {} rows, expected {} and {}",
            spec.c1.rows(),
            spec.c2.rows(),
            p1.num_rows(),
            p2.num_rows()
        )));
    }
    for (c, p, name) in [(&spec.c1, p1, "c1"), (&spec.c2, p2, "c2")] {
        for i in 0..p.num_rows() {
            if p.sense(i) == Sense::Le && !c[(i, i)].is_positive() {
                return Err(Error::BadAugmentationSpec(format!(
                    "{name} entry {i} must be positive: scaling a <= row by a negative factor \
                     would flip it"
                )));
            }
        }
    }
    for p in [p1, p2] {
        if p.space().has_class("u") {
            return Err(Error::BadAugmentationSpec(
                "class label `u` is reserved for the slack variables".into(),
            ));
        }
    }

    let u_space = VarSpace::flat("u", q);
    let space = p1.space().concat(p2.space())?.concat(&u_space)?;
    let (n1, n2) = (p1.dim(), p2.dim());
    let dim = n1 + n2 + q;
    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();

    for i in 0..p1.num_rows() {
        let scale = &spec.c1[(i, i)];
        let mut row = vec![int(0); dim];
        for (slot, coeff) in row.iter_mut().zip(p1.row(i)) {
            *slot = scale * coeff;
        }
        rows.push((row, p1.sense(i), scale * p1.rhs(i)));
    }
    for r in 0..q {
        let mut row = vec![int(0); dim];
        for (j, slot) in row.iter_mut().take(n1).enumerate() {
            *slot = spec.b1[(r, j)].clone();
        }
        for (j, slot) in row.iter_mut().skip(n1).take(n2).enumerate() {
            *slot = spec.b2[(r, j)].clone();
        }
        row[n1 + n2 + r] = int(-1);
        rows.push((row, Sense::Le, int(0)));
    }
    for i in 0..p2.num_rows() {
        let scale = &spec.c2[(i, i)];
        let mut row = vec![int(0); dim];
        for j in 0..n2 {
            row[n1 + j] = scale * &p2.row(i)[j];
        }
        rows.push((row, p2.sense(i), scale * p2.rhs(i)));
    }
    for r in 0..q {
        let mut row = vec![int(0); dim];
        row[n1 + n2 + r] = int(-1);
        rows.push((row, Sense::Le, int(0)));
    }
    let combined = HPoly::from_rows(space, rows)?;

    for (p, name) in [(p1, "first"), (p2, "second")] {
        let classes: Vec<&str> = p.space().classes();
        match crate::projection::project_onto_classes(&combined, &classes)? {
            ProjectionResult::Polytope(h) => {
                let aligned = align_to_space(&h, p.space())?;
                if !poly_equal(&aligned, p)? {
                    return Err(Error::Internal(format!(
                        "mutual augmentation does not project back onto the {name} operand"
                    )));
                }
            }
            other => {
                let full_ok = other.is_full_space()
                    && poly_equal(p, &HPoly::full(p.space().clone()))?;
                if !full_ok {
                    return Err(Error::Internal(format!(
                        "mutual augmentation projects to {} on the {name} operand",
                        other.describe()
                    )));
                }
            }
        }
    }
    Ok(combined)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationTag {
    WellDefinedEF,
    NoRelation,
    IllDefined,
}

/// Classifier outcome: the tag plus the evidence in both directions
/// (`p_as_target` treats `q` as the candidate and vice versa).
#[derive(Clone, Debug)]
pub struct RelationClass {
    pub tag: RelationTag,
    pub p_as_target: EFVerdict,
    pub q_as_target: EFVerdict,
}

/// Classifies the extension relationship between two polytopes.
///
/// Overlapping classes: a well-defined relationship exists exactly when the
/// projection check passes in some direction. Disjoint classes: projection
/// always rejects, so a verifying witness map makes the relationship
/// ill-defined (two definitions contradict), and with no verifying witness
/// the verdict is no-relation with an explicit caveat that witness search is
/// undecided.
pub fn classify_relationship(
    p: &HPoly,
    q: &HPoly,
    witnesses: &[AffineMapSpec],
) -> Result<RelationClass> {
    let independent = independent_spaces(&PolyInput::H(p), &PolyInput::H(q))?;
    let witness_for = |target: &HPoly, candidate: &HPoly| {
        witnesses
            .iter()
            .find(|w| &w.domain == candidate.space() && &w.codomain == target.space())
    };
    let mut p_as_target =
        check_ef_all(&PolyInput::H(p), q, witness_for(p, q))?;
    let mut q_as_target =
        check_ef_all(&PolyInput::H(q), p, witness_for(q, p))?;

    let tag = if independent {
        if p_as_target.def2.is_some() || q_as_target.def2.is_some() {
            RelationTag::IllDefined
        } else {
            let caveat =
                "independent spaces, no verifying witness supplied; witness search undecided";
            p_as_target.notes.push(caveat.to_string());
            q_as_target.notes.push(caveat.to_string());
            RelationTag::NoRelation
        }
    } else if p_as_target.def1 == Some(true) || q_as_target.def1 == Some(true) {
        RelationTag::WellDefinedEF
    } else {
        RelationTag::NoRelation
    };
    Ok(RelationClass { tag, p_as_target, q_as_target })
}

/// Adding redundant material to a candidate with overlapping variables never
/// changes its projection verdict: this helper recomputes both verdicts and
/// reports whether they agree (the contract says they always do).
///
/// Preconditions checked: `p1`'s variables are contained in `p2`'s, neither
/// coefficient matrix is zero, and `p3` augments `p2`.
pub fn overlap_augmentation_invariance(p1: &HPoly, p2: &HPoly, p3: &HPoly) -> Result<bool> {
    for v in p1.space().vars() {
        if p2.space().position(v).is_none() {
            return Err(Error::SpaceMismatch(
                "overlap invariance requires the first operand's variables inside the second's",
            ));
        }
    }
    if p1.matrix().is_zero() || p2.matrix().is_zero() {
        return Err(Error::MalformedInput(
            "overlap invariance requires nonzero coefficient matrices".into(),
        ));
    }
    if !check_augmentation(p2, p3)? {
        return Err(Error::MalformedInput(
            "third operand does not augment the second".into(),
        ));
    }
    let direct = check_ef(&PolyInput::H(p1), p2, EfDefinition::Projection, None)?;
    let augmented = check_ef(&PolyInput::H(p1), p3, EfDefinition::Projection, None)?;
    Ok(direct.def1 == augmented.def1)
}
