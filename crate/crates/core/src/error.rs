use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("points are not full-dimensional: all lie on {hyperplane}")]
    NotFullDimensional { hyperplane: String },
    #[error("region is unbounded along ray {ray:?}")]
    Unbounded { ray: Vec<String> },
    #[error("region is empty (Farkas multipliers {farkas:?})")]
    EmptyRegion { farkas: Vec<String> },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
