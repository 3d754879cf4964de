//! The line-oriented text model format.
//!
//! Grammar (one item per file; `#` starts a comment; blank lines ignored):
//!
//! ```text
//! hpoly <name>
//! vars <class>:<count> [<class>:<count> ...]
//! <coeff> <coeff> ... <op> <rhs>        # op in {<=, =, >=}
//! end
//! ```
//!
//! `vpoly` replaces constraint rows with `vertex <coord> ...` lines, `lp`
//! adds a `min <coeff> ...` line before the rows. Map files:
//!
//! ```text
//! map <name>
//! from <class>:<count> ...
//! to <class>:<count> ...
//! <matrix row>                          # one per target variable
//! offset <coords>                       # optional, defaults to zero
//! end
//! ```
//!
//! Augmentation-spec files:
//!
//! ```text
//! augspec <name>
//! slacks <q>
//! c1 <diagonal entries>
//! c2 <diagonal entries>
//! b1 <row>                              # q rows, one per line
//! b2 <row>                              # q rows, one per line
//! end
//! ```
//!
//! All numbers are exact rationals (`p`, `-p`, or `p/q` with `q > 0`);
//! parse-print round trips are bit-exact.

use polyef::ef::AugmentationSpec;
use polyef::lp::LinProgram;
use polyef::map::AffineMapSpec;
use polyef::matrix::RatMatrix;
use polyef::polyhedron::{HPoly, Sense, VPoly};
use polyef::rational::{parse_rational, RatVector, Rational};
use polyef::space::{VarSpace, Variable};

#[derive(Clone, Debug, PartialEq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelBody {
    HPoly(HPoly),
    VPoly(VPoly),
    Lp(LinProgram),
}

/// A parsed model file: name plus one polyhedron or linear program.
#[derive(Clone, Debug)]
pub struct ModelFile {
    pub name: String,
    pub body: ModelBody,
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, raw)| {
                let no_comment = match raw.find('#') {
                    Some(p) => &raw[..p],
                    None => raw,
                };
                (i + 1, no_comment.trim())
            })
            .filter(|(_, s)| !s.is_empty())
            .collect();
        Self { items, at: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.items.get(self.at).copied();
        self.at += 1;
        item
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        self.next().ok_or(FormatError {
            line: usize::MAX,
            message: format!("unexpected end of file, expected {what}"),
        })
    }
}

/// Parses `class:count` declarations into a flat variable space
/// (`class[1] .. class[count]`, declaration order).
fn parse_vars(line: usize, tokens: &[&str]) -> Result<VarSpace, FormatError> {
    if tokens.is_empty() {
        return err(line, "expected at least one class:count declaration");
    }
    let mut vars = Vec::new();
    let mut classes: Vec<String> = Vec::new();
    for tok in tokens {
        let Some((class, count)) = tok.split_once(':') else {
            return err(line, format!("`{tok}` is not a class:count declaration"));
        };
        if class.is_empty() || !class.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return err(line, format!("`{class}` is not a valid class label"));
        }
        if classes.iter().any(|c| c == class) {
            return err(line, format!("duplicate class `{class}`"));
        }
        classes.push(class.to_string());
        let count: usize = match count.parse() {
            Ok(c) if c > 0 => c,
            _ => return err(line, format!("`{count}` is not a positive count")),
        };
        for i in 1..=count {
            vars.push(Variable::new(class, vec![i]));
        }
    }
    VarSpace::new(vars).map_err(|e| FormatError { line, message: e.to_string() })
}

fn parse_coeffs(line: usize, tokens: &[&str]) -> Result<RatVector, FormatError> {
    tokens
        .iter()
        .map(|t| parse_rational(t).map_err(|m| FormatError { line, message: m }))
        .collect()
}

/// One constraint row: coefficients, a comparison token, one rhs.
fn parse_row(
    line: usize,
    tokens: &[&str],
    dim: usize,
) -> Result<(RatVector, Sense, Rational), FormatError> {
    let op_at = tokens
        .iter()
        .position(|t| *t == "<=" || *t == "=" || *t == ">=")
        .ok_or(FormatError { line, message: "row has no <=, =, or >= operator".into() })?;
    if op_at != tokens.len() - 2 {
        return err(line, "expected exactly one right-hand side after the operator");
    }
    let coeffs = parse_coeffs(line, &tokens[..op_at])?;
    if coeffs.len() != dim {
        return err(line, format!("row has {} coefficients, expected {dim}", coeffs.len()));
    }
    let rhs = parse_rational(tokens[op_at + 1]).map_err(|m| FormatError { line, message: m })?;
    Ok(match tokens[op_at] {
        "<=" => (coeffs, Sense::Le, rhs),
        "=" => (coeffs, Sense::Eq, rhs),
        ">=" => (coeffs.into_iter().map(|c| -c).collect(), Sense::Le, -rhs),
        _ => unreachable!(),
    })
}

fn parse_header<'a>(
    lines: &mut Lines<'a>,
    kinds: &[&str],
) -> Result<(String, String), FormatError> {
    let (line, head) = lines.expect("a header line")?;
    let mut parts = head.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    if !kinds.contains(&kind) {
        return err(line, format!("expected one of {kinds:?}, found `{kind}`"));
    }
    let Some(name) = parts.next() else {
        return err(line, "header needs a name");
    };
    if parts.next().is_some() {
        return err(line, "header takes exactly one name");
    }
    Ok((kind.to_string(), name.to_string()))
}

pub fn parse_model(text: &str) -> Result<ModelFile, FormatError> {
    let mut lines = Lines::new(text);
    let (kind, name) = parse_header(&mut lines, &["hpoly", "vpoly", "lp"])?;
    let (vline, vdecl) = lines.expect("a vars line")?;
    let vtokens: Vec<&str> = vdecl.split_whitespace().collect();
    if vtokens.first() != Some(&"vars") {
        return err(vline, "expected a `vars` line after the header");
    }
    let space = parse_vars(vline, &vtokens[1..])?;
    let dim = space.dim();

    let mut objective: Option<RatVector> = None;
    let mut rows: Vec<(RatVector, Sense, Rational)> = Vec::new();
    let mut vertices: Vec<RatVector> = Vec::new();
    loop {
        let (line, body) = lines.expect("a row or `end`")?;
        if body == "end" {
            break;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            "vertex" => {
                if kind != "vpoly" {
                    return err(line, "vertex lines belong to vpoly files");
                }
                let coords = parse_coeffs(line, &tokens[1..])?;
                if coords.len() != dim {
                    return err(
                        line,
                        format!("vertex has {} coordinates, expected {dim}", coords.len()),
                    );
                }
                vertices.push(coords);
            }
            "min" => {
                if kind != "lp" {
                    return err(line, "min lines belong to lp files");
                }
                if objective.is_some() {
                    return err(line, "duplicate min line");
                }
                let coeffs = parse_coeffs(line, &tokens[1..])?;
                if coeffs.len() != dim {
                    return err(
                        line,
                        format!("objective has {} coefficients, expected {dim}", coeffs.len()),
                    );
                }
                objective = Some(coeffs);
            }
            _ => {
                if kind == "vpoly" {
                    return err(line, "vpoly files take vertex lines only");
                }
                rows.push(parse_row(line, &tokens, dim)?);
            }
        }
    }
    if lines.next().is_some() {
        return err(usize::MAX, "content after `end`");
    }

    let body = match kind.as_str() {
        "hpoly" => ModelBody::HPoly(
            HPoly::from_rows(space, rows)
                .map_err(|e| FormatError { line: 0, message: e.to_string() })?,
        ),
        "vpoly" => {
            if vertices.is_empty() {
                return err(0, "vpoly files need at least one vertex");
            }
            ModelBody::VPoly(
                VPoly::new(space, vertices)
                    .map_err(|e| FormatError { line: 0, message: e.to_string() })?,
            )
        }
        "lp" => {
            let Some(objective) = objective else {
                return err(0, "lp files need a min line");
            };
            let constraints = HPoly::from_rows(space, rows)
                .map_err(|e| FormatError { line: 0, message: e.to_string() })?;
            ModelBody::Lp(
                LinProgram::new(objective, constraints)
                    .map_err(|e| FormatError { line: 0, message: e.to_string() })?,
            )
        }
        _ => unreachable!(),
    };
    Ok(ModelFile { name, body })
}

pub fn parse_map(text: &str) -> Result<(String, AffineMapSpec), FormatError> {
    let mut lines = Lines::new(text);
    let (_, name) = parse_header(&mut lines, &["map"])?;
    let (fline, fdecl) = lines.expect("a from line")?;
    let ftokens: Vec<&str> = fdecl.split_whitespace().collect();
    if ftokens.first() != Some(&"from") {
        return err(fline, "expected a `from` line");
    }
    let domain = parse_vars(fline, &ftokens[1..])?;
    let (tline, tdecl) = lines.expect("a to line")?;
    let ttokens: Vec<&str> = tdecl.split_whitespace().collect();
    if ttokens.first() != Some(&"to") {
        return err(tline, "expected a `to` line");
    }
    let codomain = parse_vars(tline, &ttokens[1..])?;

    let mut matrix_rows: Vec<RatVector> = Vec::new();
    let mut offset: Option<RatVector> = None;
    loop {
        let (line, body) = lines.expect("a matrix row or `end`")?;
        if body == "end" {
            break;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens[0] == "offset" {
            if offset.is_some() {
                return err(line, "duplicate offset line");
            }
            let coords = parse_coeffs(line, &tokens[1..])?;
            if coords.len() != codomain.dim() {
                return err(
                    line,
                    format!("offset has {} entries, expected {}", coords.len(), codomain.dim()),
                );
            }
            offset = Some(coords);
        } else {
            let row = parse_coeffs(line, &tokens)?;
            if row.len() != domain.dim() {
                return err(
                    line,
                    format!("matrix row has {} entries, expected {}", row.len(), domain.dim()),
                );
            }
            matrix_rows.push(row);
        }
    }
    if matrix_rows.len() != codomain.dim() {
        return err(
            0,
            format!("map has {} matrix rows, expected {}", matrix_rows.len(), codomain.dim()),
        );
    }
    let matrix = RatMatrix::from_rows(&matrix_rows)
        .map_err(|e| FormatError { line: 0, message: e.to_string() })?;
    let offset =
        offset.unwrap_or_else(|| vec![polyef::rational::int(0); codomain.dim()]);
    let map = AffineMapSpec::new(matrix, offset, domain, codomain)
        .map_err(|e| FormatError { line: 0, message: e.to_string() })?;
    Ok((name, map))
}

pub fn parse_augspec(text: &str) -> Result<(String, AugmentationSpec), FormatError> {
    let mut lines = Lines::new(text);
    let (_, name) = parse_header(&mut lines, &["augspec"])?;
    let mut slacks: Option<usize> = None;
    let mut c1: Option<RatVector> = None;
    let mut c2: Option<RatVector> = None;
    let mut b1: Vec<RatVector> = Vec::new();
    let mut b2: Vec<RatVector> = Vec::new();
    loop {
        let (line, body) = lines.expect("a section line or `end`")?;
        if body == "end" {
            break;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[0] {
            "slacks" => {
                slacks = Some(match tokens.get(1).and_then(|t| t.parse().ok()) {
                    Some(q) => q,
                    None => return err(line, "slacks needs a positive count"),
                });
            }
            "c1" => c1 = Some(parse_coeffs(line, &tokens[1..])?),
            "c2" => c2 = Some(parse_coeffs(line, &tokens[1..])?),
            "b1" => b1.push(parse_coeffs(line, &tokens[1..])?),
            "b2" => b2.push(parse_coeffs(line, &tokens[1..])?),
            other => return err(line, format!("unknown augspec section `{other}`")),
        }
    }
    let q = slacks.ok_or(FormatError { line: 0, message: "missing slacks line".into() })?;
    if b1.len() != q || b2.len() != q {
        return err(0, format!("expected {q} b1 rows and {q} b2 rows, got {} and {}", b1.len(), b2.len()));
    }
    let diag = |entries: RatVector| {
        let n = entries.len();
        let mut m = RatMatrix::zero(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    };
    let c1 = diag(c1.ok_or(FormatError { line: 0, message: "missing c1 line".into() })?);
    let c2 = diag(c2.ok_or(FormatError { line: 0, message: "missing c2 line".into() })?);
    let b1 = RatMatrix::from_rows(&b1).map_err(|e| FormatError { line: 0, message: e.to_string() })?;
    let b2 = RatMatrix::from_rows(&b2).map_err(|e| FormatError { line: 0, message: e.to_string() })?;
    let spec = AugmentationSpec::new(b1, b2, c1, c2)
        .map_err(|e| FormatError { line: 0, message: e.to_string() })?;
    Ok((name, spec))
}

/// Flattens a space into `class:count` declarations. Requires each class's
/// variables to be contiguous (all generated models satisfy this).
fn declare_vars(space: &VarSpace) -> Result<String, String> {
    let mut decls: Vec<(String, usize)> = Vec::new();
    for v in space.vars() {
        match decls.last_mut() {
            Some((class, count)) if *class == v.class => *count += 1,
            _ => {
                if decls.iter().any(|(c, _)| c == &v.class) {
                    return Err(format!(
                        "class `{}` is not contiguous in the variable order",
                        v.class
                    ));
                }
                decls.push((v.class.clone(), 1));
            }
        }
    }
    Ok(decls.into_iter().map(|(c, n)| format!("{c}:{n}")).collect::<Vec<_>>().join(" "))
}

/// A `# vars:` comment naming every variable with its index tuple, so the
/// flat file ordering stays interpretable for structured models.
fn vars_comment(space: &VarSpace) -> String {
    let names: Vec<String> = space.vars().iter().map(|v| v.to_string()).collect();
    format!("# vars: {}", names.join(" "))
}

pub fn print_model(m: &ModelFile) -> Result<String, String> {
    let mut out = String::new();
    let space = match &m.body {
        ModelBody::HPoly(h) => h.space(),
        ModelBody::VPoly(v) => v.space(),
        ModelBody::Lp(lp) => lp.constraints.space(),
    };
    let kind = match &m.body {
        ModelBody::HPoly(_) => "hpoly",
        ModelBody::VPoly(_) => "vpoly",
        ModelBody::Lp(_) => "lp",
    };
    out.push_str(&format!("{kind} {}\n", m.name));
    out.push_str(&vars_comment(space));
    out.push('\n');
    out.push_str(&format!("vars {}\n", declare_vars(space)?));
    let fmt_vec =
        |v: &[Rational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
    match &m.body {
        ModelBody::HPoly(h) => {
            for (row, sense, rhs) in h.rows() {
                let op = match sense {
                    Sense::Le => "<=",
                    Sense::Eq => "=",
                };
                out.push_str(&format!("{} {op} {rhs}\n", fmt_vec(row)));
            }
        }
        ModelBody::VPoly(v) => {
            for vertex in v.vertices() {
                out.push_str(&format!("vertex {}\n", fmt_vec(vertex)));
            }
        }
        ModelBody::Lp(lp) => {
            out.push_str(&format!("min {}\n", fmt_vec(&lp.objective)));
            for (row, sense, rhs) in lp.constraints.rows() {
                let op = match sense {
                    Sense::Le => "<=",
                    Sense::Eq => "=",
                };
                out.push_str(&format!("{} {op} {rhs}\n", fmt_vec(row)));
            }
        }
    }
    out.push_str("end\n");
    Ok(out)
}
