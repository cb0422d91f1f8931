use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SqhError {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("polynomial is not quasihomogeneous of degree {degree}: offending term {term}")]
    NotQuasihomogeneous { degree: i64, term: String },
    #[error("singularity is not isolated: {0}")]
    NonIsolated(String),
    #[error("truncation degree {bound} is too small: {detail}")]
    Truncation { bound: i64, detail: String },
    #[error("principal part mismatch: expected {expected}, found {found}")]
    PrincipalPartMismatch { expected: String, found: String },
    #[error("automorphism is not graded: image of {variable} is {image}")]
    NotGraded { variable: String, image: String },
    #[error("conductor {conductor} is incompatible: {detail}")]
    Conductor { conductor: u32, detail: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, SqhError>;
