use thiserror::Error;

use crate::qlinalg::LinalgError;

/// Errors raised while building or querying an algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements are over different generator sets")]
    GeneratorMismatch,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has degree {degree}; degrees must be at least 1")]
    BadDegree { name: String, degree: u32 },
    #[error("generator `{name}` (degree {degree}) follows a generator of higher degree")]
    DegreeOrder { name: String, degree: u32 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("expected an element of degree {expected}, got degree {actual}")]
    DegreeMismatch { expected: u32, actual: u32 },
    #[error("element is not closed")]
    NotClosed,
    #[error("generator names collide: {0}")]
    NameCollision(String),
    #[error("no formal dimension declared")]
    MissingDimension,
    #[error("top cohomology H^{degree} has dimension {dim}, expected 1")]
    TopClassNotLine { degree: u32, dim: usize },
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("bracket does not satisfy the Jacobi identity: {0}")]
    JacobiFailure(String),
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
