use crate::rational::RatVector;

/// Errors reported by the polyhedral kernel.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Operand dimensions do not line up; the message names the operation.
    DimensionMismatch(String),
    /// The operation requires a non-empty polyhedron.
    EmptyPolyhedron(&'static str),
    /// The operation requires a bounded polyhedron; carries a recession ray.
    Unbounded { context: &'static str, ray: RatVector },
    /// A variable class label was not found in the relevant space.
    UnknownClass(String),
    /// Two variables in one space share the same (class, index) pair.
    DuplicateVariable(String),
    /// The two operands must be stated over the same variable space.
    SpaceMismatch(&'static str),
    /// Projection was asked to keep an empty set of variables.
    EmptyKeepSet,
    /// The kept-variable coefficient block must be all zeros for the
    /// degenerate projection shortcut; use the general projection instead.
    NonzeroKeptBlock,
    /// A definition-2 check was requested without a witness map.
    MissingWitness,
    /// Objective pushforward requires a nonnegative map matrix; carries the
    /// offending (row, col) position.
    NegativeMapEntry(usize, usize),
    /// The candidate does not restate the base verbatim (a missing variable
    /// or row), so it is not an augmentation by construction.
    NotAugmentation(String),
    /// A malformed augmentation spec (wrong shape, zero or negative scaling).
    BadAugmentationSpec(String),
    /// A generator parameter is outside its supported range.
    OutOfRange { what: &'static str, got: usize, min: usize, max: usize },
    /// A tour or assignment input violates its structural invariants.
    MalformedInput(String),
    /// An internal consistency check failed; this indicates a bug.
    Internal(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::EmptyPolyhedron(ctx) => write!(f, "{ctx}: polyhedron is empty"),
            Error::Unbounded { context, ray } => {
                write!(f, "{context}: polyhedron is unbounded along ray [")?;
                for (i, c) in ray.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
            Error::UnknownClass(label) => write!(f, "unknown variable class `{label}`"),
            Error::DuplicateVariable(v) => write!(f, "duplicate variable `{v}`"),
            Error::SpaceMismatch(ctx) => write!(f, "{ctx}: operands use different variable spaces"),
            Error::EmptyKeepSet => write!(f, "projection requires at least one kept variable"),
            Error::NonzeroKeptBlock => write!(
                f,
                "coefficient block on the kept variables is not zero; use the general projection"
            ),
            Error::MissingWitness => {
                write!(f, "definition-2 check requires an explicit witness map")
            }
            Error::NegativeMapEntry(r, c) => write!(
                f,
                "map matrix entry ({r}, {c}) is negative; objective pushforward requires a \
                 nonnegative matrix"
            ),
            Error::NotAugmentation(reason) => {
                write!(f, "candidate is not an augmentation by construction: {reason}")
            }
            Error::BadAugmentationSpec(msg) => write!(f, "bad augmentation spec: {msg}"),
            Error::OutOfRange { what, got, min, max } => {
                write!(f, "{what} = {got} is outside the supported range {min}..={max}")
            }
            Error::MalformedInput(msg) => write!(f, "malformed input: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
