use thiserror::Error;

use crate::boxtimes::BoxtimesCertificate;

/// Errors raised by the engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not symmetric at ({0}, {1})")]
    AsymmetricMatrix(usize, usize),
    #[error("negative distance at ({0}, {1})")]
    NegativeDistance(usize, usize),
    #[error("nonzero diagonal entry at {0}")]
    NonzeroDiagonal(usize),
    #[error("triangle inequality violated for ({0}, {1}, {2}) by {3}")]
    TriangleViolation(usize, usize, usize, f64),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("matrix shape does not match {0} labels")]
    ShapeMismatch(usize),
    #[error("degenerate vertex: zero distance at the angle's apex")]
    DegenerateVertex,
    #[error("empty subset")]
    EmptySubset,
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("exponent {0} outside (0, 1]")]
    BadExponent(f64),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parameter ({0}, {1}) outside the unit square")]
    ParamOutOfRange(f64, f64),
    #[error("{0} points: the five-point decision rule does not apply")]
    TooManyPoints(usize),
    #[error("pivot frame is degenerate and the residual triangle is inconsistent")]
    PivotDegenerate,
    #[error("quadruple is not embeddable in R^3 for this pivot")]
    NotEmbeddable,
    #[error("gluing {0} joins features of different lengths")]
    LengthMismatch(usize),
    #[error("complex is disconnected")]
    DisconnectedComplex,
    #[error("bad barycentric coordinates for mark {0:?}")]
    BadBarycentric(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("negative length {0}")]
    NegativeLength(f64),
    #[error("unknown mark {0:?}")]
    UnknownMark(String),
    #[error("vertex is not an interior vertex")]
    NotInteriorVertex,
    #[error("no vertex sees every other pair as an edge")]
    NoSuchVertex,
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid split")]
    BadSplit,
    #[error("witness search failed, best penalty {0:e}")]
    SearchFailed(f64),
    #[error("space violates a boxtimes inequality (value {})", .0.value)]
    BoxtimesViolated(BoxtimesCertificate),
    #[error("no case branch produced a verifying witness: {0}")]
    CaseDispatchAmbiguous(String),
    #[error("arity mismatch: expected {0}, got {1}")]
    ArityMismatch(usize, usize),
    #[error("witness distances violate the graph pattern at ({0}, {1})")]
    PatternViolated(usize, usize),
    #[error("graph has more than five vertices or an invalid edge")]
    BadGraph,
}

pub type Result<T> = std::result::Result<T, Error>;
