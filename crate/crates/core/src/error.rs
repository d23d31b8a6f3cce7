use thiserror::Error;

/// Syntax error in a polynomial expression. `position` is a 0-based byte
/// offset into the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at offset {position}")]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, position: usize) -> Self {
        ParseError {
            message: message.into(),
            position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("{0}: polynomial is zero")]
    ZeroPolynomial(&'static str),
    #[error("generator {index} is the zero polynomial")]
    ZeroGenerator { index: usize },
    #[error("germ does not vanish at the origin (constant term {constant})")]
    NonzeroConstantTerm { constant: String },
    #[error("vector field has {found} components, ring has {expected} variables")]
    ComponentCount { expected: usize, found: usize },
    #[error("vector field {index} is not tangent to the variety (equation {equation})")]
    NotTangent { index: usize, equation: usize },
    #[error("parameter `{0}` is not instantiated")]
    UninstantiatedParameter(String),
    #[error("{0} does not have an isolated singularity")]
    NonIsolated(&'static str),
    #[error("base Bruce-Roberts number is infinite")]
    InfiniteBase,
    #[error("quotient dimension exceeds the bound of {bound} standard monomials")]
    BoundExceeded { bound: u64 },
    #[error("variable name `{0}` is already in use")]
    NameCollision(String),
    #[error("arc has {found} components, polynomial ring has {expected} variables")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid sample set: {0}")]
    InvalidSamples(String),
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
