use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("incompatible fields: {left} and {right}")]
    IncompatibleField { left: Field, right: Field },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),

    #[error("cannot parse scalar `{0}`")]
    ParseScalar(String),

    #[error("cannot parse field `{0}` (expected `Q` or `Fp:<p>`)")]
    ParseField(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),

    #[error("invalid structure constants: {0}")]
    InvalidStructureConstants(String),

    #[error("algebra is not local (radical has dimension {radical_dim}, algebra has dimension {dim})")]
    NotLocal { dim: usize, radical_dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("malformed representation: {0}")]
    MalformedRep(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralizerError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Module(#[from] ModuleError),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("input does not generate a commutative algebra: elements {0} and {1} do not commute")]
    NotCommutative(usize, usize),

    #[error("precondition violated: radical element {radical_index} does not annihilate vector {vector_index} of L")]
    PreconditionViolation { radical_index: usize, vector_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Centralizer(#[from] CentralizerError),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("the images of L_x, L_y, L_z do not span the 2-dimensional target")]
    NotSpanning,

    #[error("degenerate pencil: no linear combination of L_x, L_y, L_z has rank 2")]
    DegeneratePencil,

    #[error("triple is not equivalent to the canonical triple: {0}")]
    OutsideCanonicalOrbit(String),
}

/// A problem with an input document, located by a JSON path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Field { path: String, message: String },
}
