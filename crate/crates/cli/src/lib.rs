//! Command-line front end: text model files in, line-oriented reports out.
//!
//! Exit codes: `0` the operation succeeded or the checked claim holds,
//! `1` the checked claim fails, `2` usage or input error.

pub mod format;
pub mod report;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use polyef::ef::{
    check_augmentation, check_ef, classify_relationship, construct_mutual_augmentation,
    independent_spaces, EfDefinition, PolyInput, RelationTag,
};
use polyef::lp::{self, LpStatus};
use polyef::polyhedron::{enumerate_vertices, hull, HPoly, VPoly};
use polyef::projection::{project_onto_classes, pushforward_objective, ProjectionResult};
use polyef::rational::{parse_rational, RatVector};

use format::{parse_augspec, parse_map, parse_model, print_model, ModelBody, ModelFile};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "polyef",
    version,
    about = "Exact rational polyhedra: projection, redundancy, and extension checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the exact vertex set of a bounded H-polyhedron.
    Vertices {
        #[arg(long)]
        poly: PathBuf,
        /// Write the resulting vpoly model here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a vertex list into an irredundant H-description.
    Hull {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project an H-polyhedron onto the named variable classes.
    Project {
        #[arg(long)]
        poly: PathBuf,
        /// Comma-separated class labels to keep.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize a linear objective over an H-polyhedron.
    Minimize {
        #[arg(long)]
        poly: PathBuf,
        /// Space-separated rational coefficients, e.g. "1 0 -3/2".
        #[arg(long)]
        objective: String,
    },
    /// Solve a linear program given as an lp model file.
    SolveLp {
        #[arg(long)]
        lp: PathBuf,
    },
    /// Check one extension-relationship definition.
    CheckEf {
        /// Definition number: 1 projection, 2 linear-map witness, 3 iff.
        #[arg(long = "def")]
        definition: u8,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
        /// Witness map file (required for definition 2).
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Check that the candidate augments the base.
    CheckAugmentation {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Check whether two polytopes live in independent spaces.
    CheckIndependent {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Classify the extension relationship between two polytopes.
    Classify {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        /// Candidate witness map files (repeatable).
        #[arg(long = "map")]
        maps: Vec<PathBuf>,
    },
    /// Combine two polytopes over independent spaces into one system that
    /// projects back onto each of them.
    AugmentPair {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rewrite an objective through a nonnegative affine map.
    Pushforward {
        /// Space-separated rational coefficients.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        map: PathBuf,
    },
    /// Generate one of the built-in model families.
    Gen {
        family: GenFamily,
        #[arg(long)]
        n: usize,
        /// Edge costs (spanning-tree families only); emits an lp model.
        #[arg(long)]
        costs: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification suite of worked examples.
    VerifyPaper {
        /// Only run checks whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
        /// Seed for the randomized sub-checks (printed in the header).
        #[arg(long, default_value_t = 20130712)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenFamily {
    TspStandard,
    TspAlternate,
    MstEdmonds,
    MstMartin,
    MstMartinReduced,
}

/// Input or usage failure carried up to the exit-code mapping.
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError(message)) => {
            let _ = writeln!(out, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn read_input(path: &Path, report: &mut Report) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    report.input(path, &text);
    Ok(text)
}

fn load_model(path: &Path, report: &mut Report) -> Result<ModelFile, CliError> {
    let text = read_input(path, report)?;
    parse_model(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_hpoly(path: &Path, report: &mut Report) -> Result<HPoly, CliError> {
    match load_model(path, report)?.body {
        ModelBody::HPoly(h) => Ok(h),
        _ => Err(CliError(format!("{}: expected an hpoly model", path.display()))),
    }
}

fn load_vpoly(path: &Path, report: &mut Report) -> Result<VPoly, CliError> {
    match load_model(path, report)?.body {
        ModelBody::VPoly(v) => Ok(v),
        _ => Err(CliError(format!("{}: expected a vpoly model", path.display()))),
    }
}

/// A polytope argument that may arrive in either representation.
fn load_poly(path: &Path, report: &mut Report) -> Result<ModelBody, CliError> {
    match load_model(path, report)?.body {
        ModelBody::Lp(_) => Err(CliError(format!(
            "{}: expected an hpoly or vpoly model, found an lp",
            path.display()
        ))),
        body => Ok(body),
    }
}

fn load_map_file(
    path: &Path,
    report: &mut Report,
) -> Result<polyef::map::AffineMapSpec, CliError> {
    let text = read_input(path, report)?;
    let (_, map) = parse_map(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(map)
}

fn parse_coeff_list(s: &str) -> Result<RatVector, CliError> {
    s.split_whitespace()
        .map(|t| parse_rational(t).map_err(CliError))
        .collect()
}

/// Writes a model to `--out` or to stdout below the comment-prefixed report.
fn emit_model<W: Write>(
    report: Report,
    model: &ModelFile,
    out_path: Option<&Path>,
    out: &mut W,
) -> Result<i32, CliError> {
    let text = print_model(model).map_err(CliError)?;
    match out_path {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            let mut report = report;
            report.kv("wrote", path.display());
            report.emit(out)?;
        }
        None => {
            report.emit_as_comments(out)?;
            write!(out, "{text}")?;
        }
    }
    Ok(EXIT_OK)
}

fn fmt_point(v: &[polyef::Rational]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> Result<i32, CliError> {
    match command {
        Command::Vertices { poly, out: out_path } => {
            let mut report = Report::new("vertices");
            let h = load_hpoly(&poly, &mut report)?;
            let v = enumerate_vertices(&h)?;
            report.kv("vertices", v.vertices().len());
            let model = ModelFile { name: "vertices".into(), body: ModelBody::VPoly(v) };
            emit_model(report, &model, out_path.as_deref(), out)
        }
        Command::Hull { poly, out: out_path } => {
            let mut report = Report::new("hull");
            let v = load_vpoly(&poly, &mut report)?;
            let h = hull(&v)?;
            report.kv("rows", h.num_rows());
            let model = ModelFile { name: "hull".into(), body: ModelBody::HPoly(h) };
            emit_model(report, &model, out_path.as_deref(), out)
        }
        Command::Project { poly, keep, out: out_path } => {
            let mut report = Report::new("project");
            let h = load_hpoly(&poly, &mut report)?;
            let labels: Vec<&str> = keep.iter().map(String::as_str).collect();
            report.kv("keep", labels.join(","));
            match project_onto_classes(&h, &labels)? {
                ProjectionResult::Polytope(p) => {
                    report.kv("projection", "polyhedron");
                    report.kv("rows", p.num_rows());
                    let model =
                        ModelFile { name: "projection".into(), body: ModelBody::HPoly(p) };
                    emit_model(report, &model, out_path.as_deref(), out)
                }
                ProjectionResult::FullSpace(d) => {
                    report.kv("projection", format!("FullSpace({d})"));
                    report.emit(out)?;
                    Ok(EXIT_OK)
                }
                ProjectionResult::Empty(witness) => {
                    report.kv("projection", "Empty");
                    report.kv("farkas-witness", fmt_point(&witness));
                    report.emit(out)?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Minimize { poly, objective } => {
            let mut report = Report::new("minimize");
            let h = load_hpoly(&poly, &mut report)?;
            let objective = parse_coeff_list(&objective)?;
            let outcome = lp::solve(&lp::LinProgram::new(objective, h)?)?;
            report_lp_outcome(&mut report, &outcome);
            report.emit(out)?;
            Ok(EXIT_OK)
        }
        Command::SolveLp { lp: path } => {
            let mut report = Report::new("solve-lp");
            let ModelBody::Lp(program) = load_model(&path, &mut report)?.body else {
                return Err(CliError(format!("{}: expected an lp model", path.display())));
            };
            let outcome = lp::solve(&program)?;
            report_lp_outcome(&mut report, &outcome);
            report.emit(out)?;
            Ok(EXIT_OK)
        }
        Command::CheckEf { definition, target, candidate, map } => {
            let mut report = Report::new("check-ef");
            let def = EfDefinition::from_number(definition)
                .ok_or_else(|| CliError(format!("definition must be 1, 2 or 3, got {definition}")))?;
            report.kv("definition", definition);
            let target_body = load_poly(&target, &mut report)?;
            let candidate_h = load_hpoly(&candidate, &mut report)?;
            let witness = match &map {
                Some(path) => Some(load_map_file(path, &mut report)?),
                None => None,
            };
            let target_input = match &target_body {
                ModelBody::HPoly(h) => PolyInput::H(h),
                ModelBody::VPoly(v) => PolyInput::V(v),
                ModelBody::Lp(_) => unreachable!("filtered by load_poly"),
            };
            let verdict = check_ef(&target_input, &candidate_h, def, witness.as_ref())?;
            for note in &verdict.notes {
                report.kv("note", note);
            }
            let holds = verdict.holds(def);
            report.kv("verdict", if holds { "holds" } else { "fails" });
            report.emit(out)?;
            Ok(if holds { EXIT_OK } else { EXIT_CLAIM_FAILS })
        }
        Command::CheckAugmentation { base, candidate } => {
            let mut report = Report::new("check-augmentation");
            let base_h = load_hpoly(&base, &mut report)?;
            let candidate_h = load_hpoly(&candidate, &mut report)?;
            let code = match check_augmentation(&base_h, &candidate_h) {
                Ok(true) => {
                    report.kv("augmentation", "yes");
                    EXIT_OK
                }
                Ok(false) => {
                    report.kv("augmentation", "no");
                    report.kv("reason", "added rows cut the base");
                    EXIT_CLAIM_FAILS
                }
                Err(polyef::Error::NotAugmentation(reason)) => {
                    report.kv("augmentation", "no");
                    report.kv("reason", format!("not an augmentation by construction: {reason}"));
                    EXIT_CLAIM_FAILS
                }
                Err(e) => return Err(e.into()),
            };
            report.emit(out)?;
            Ok(code)
        }
        Command::CheckIndependent { p, q } => {
            let mut report = Report::new("check-independent");
            let p_body = load_poly(&p, &mut report)?;
            let q_body = load_poly(&q, &mut report)?;
            let (pi, qi) = (poly_input(&p_body), poly_input(&q_body));
            let independent = independent_spaces(&pi, &qi)?;
            report.kv("independent", if independent { "yes" } else { "no" });
            report.emit(out)?;
            Ok(if independent { EXIT_OK } else { EXIT_CLAIM_FAILS })
        }
        Command::Classify { p, q, maps } => {
            let mut report = Report::new("classify");
            let p_h = load_hpoly(&p, &mut report)?;
            let q_h = load_hpoly(&q, &mut report)?;
            let mut witnesses = Vec::new();
            for path in &maps {
                witnesses.push(load_map_file(path, &mut report)?);
            }
            let rel = classify_relationship(&p_h, &q_h, &witnesses)?;
            report.kv(
                "relationship",
                match rel.tag {
                    RelationTag::WellDefinedEF => "well-defined-ef",
                    RelationTag::NoRelation => "no-relation",
                    RelationTag::IllDefined => "ill-defined",
                },
            );
            for note in rel.p_as_target.notes.iter().chain(&rel.q_as_target.notes) {
                report.kv("note", note);
            }
            report.emit(out)?;
            Ok(EXIT_OK)
        }
        Command::AugmentPair { p, q, spec, out: out_path } => {
            let mut report = Report::new("augment-pair");
            let p_h = load_hpoly(&p, &mut report)?;
            let q_h = load_hpoly(&q, &mut report)?;
            let spec_text = read_input(&spec, &mut report)?;
            let (_, spec) = parse_augspec(&spec_text)
                .map_err(|e| CliError(format!("{}: {e}", spec.display())))?;
            let combined = construct_mutual_augmentation(&p_h, &q_h, &spec)?;
            report.kv("rows", combined.num_rows());
            report.kv("verified", "both projections recover their operands");
            let model =
                ModelFile { name: "augmented-pair".into(), body: ModelBody::HPoly(combined) };
            emit_model(report, &model, out_path.as_deref(), out)
        }
        Command::Pushforward { alpha, map } => {
            let mut report = Report::new("pushforward");
            let map = load_map_file(&map, &mut report)?;
            let alpha = parse_coeff_list(&alpha)?;
            let (pushed, constant) = pushforward_objective(&alpha, &map)?;
            report.kv("objective", fmt_point(&pushed));
            report.kv("constant", constant);
            report.emit(out)?;
            Ok(EXIT_OK)
        }
        Command::Gen { family, n, costs, out: out_path } => {
            let mut report = Report::new("gen");
            report.kv("n", n);
            let costs = match &costs {
                Some(text) => Some(parse_coeff_list(text)?),
                None => None,
            };
            let (name, body) = generate(family, n, costs.as_deref())?;
            report.kv("family", name);
            let model = ModelFile { name: name.into(), body };
            emit_model(report, &model, out_path.as_deref(), out)
        }
        Command::VerifyPaper { filter, seed } => {
            Ok(verify::run_verify(filter.as_deref(), seed, out)?)
        }
    }
}

fn poly_input(body: &ModelBody) -> PolyInput<'_> {
    match body {
        ModelBody::HPoly(h) => PolyInput::H(h),
        ModelBody::VPoly(v) => PolyInput::V(v),
        ModelBody::Lp(_) => unreachable!("filtered by load_poly"),
    }
}

fn report_lp_outcome(report: &mut Report, outcome: &lp::LpOutcome) {
    report.kv(
        "status",
        match outcome.status {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        },
    );
    if let Some(v) = &outcome.optimum {
        report.kv("optimum", v);
    }
    if let Some(p) = &outcome.point {
        report.kv("point", fmt_point(p));
    }
    if let Some(d) = &outcome.dual {
        report.kv("dual", fmt_point(d));
    }
    if let Some(r) = &outcome.ray {
        report.kv("ray", fmt_point(r));
    }
}

fn generate(
    family: GenFamily,
    n: usize,
    costs: Option<&[polyef::Rational]>,
) -> Result<(&'static str, ModelBody), CliError> {
    use polyef::models;
    Ok(match family {
        GenFamily::TspStandard => {
            if costs.is_some() {
                return Err(CliError("tsp families take no --costs".into()));
            }
            ("tsp-standard", ModelBody::VPoly(models::gen_standard_tsp(n)?))
        }
        GenFamily::TspAlternate => {
            if costs.is_some() {
                return Err(CliError("tsp families take no --costs".into()));
            }
            ("tsp-alternate", ModelBody::HPoly(models::gen_alternate_tsp(n)?))
        }
        GenFamily::MstEdmonds => {
            let (poly, lp) = models::gen_mst_edmonds(n, costs)?;
            ("mst-edmonds", lp_or_poly(poly, lp, costs.is_some()))
        }
        GenFamily::MstMartin => {
            let (poly, lp) = models::gen_mst_martin(n, costs)?;
            ("mst-martin", lp_or_poly(poly, lp, costs.is_some()))
        }
        GenFamily::MstMartinReduced => {
            let (poly, lp) = models::gen_mst_martin_reduced(n, costs)?;
            ("mst-martin-reduced", lp_or_poly(poly, lp, costs.is_some()))
        }
    })
}

fn lp_or_poly(poly: HPoly, lp: lp::LinProgram, as_lp: bool) -> ModelBody {
    if as_lp {
        ModelBody::Lp(lp)
    } else {
        ModelBody::HPoly(poly)
    }
}
