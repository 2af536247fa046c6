use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Domain and input errors. [`Error::name`] gives the stable identifier used
/// in the CLI's `{"error": ...}` documents.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),
    #[error("eigenvalue {0} lies on or near the branch cut (-inf, 0]")]
    BranchCut(String),
    #[error("matrix is not self-adjoint (defect {0:e})")]
    NotSelfAdjoint(f64),
    #[error("basis does not define a Lie algebra: {0}")]
    NotALieAlgebra(String),
    #[error("ad h does not define a 3-grading: {0}")]
    NotThreeGraded(String),
    #[error("conjugation leaves the span of the basis (residual {0:e})")]
    AdjointOutOfSpan(f64),
    #[error("no implementing matrix for the grading involution")]
    NoTauImplementation,
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("not a compactly embedded Cartan subalgebra: {0}")]
    NotCartan(String),
    #[error("root space of dimension {0} > 1 is not supported")]
    RootSpaceNotSimple(usize),
    #[error("x0 is not regular: a root vanishes on it")]
    NotRegular,
    #[error("positive system induced by x0 is not adapted")]
    NotAdapted,
    #[error("element is not in the open cell G1 G0 G-1: {0}")]
    NotInOpenCell(String),
    #[error("polar factorization failed: {0}")]
    NotPolar(String),
    #[error("real subspace is not standard")]
    NotStandard,
    #[error("modular relation violated: {0}")]
    ModularRelationViolated(String),
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("matrix is not positive definite (min eigenvalue {0:e})")]
    NotPositiveDefinite(f64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::NonFinite(_) => "NonFinite",
            Error::BranchCut(_) => "BranchCutError",
            Error::NotSelfAdjoint(_) => "NotSelfAdjoint",
            Error::NotALieAlgebra(_) => "NotALieAlgebra",
            Error::NotThreeGraded(_) => "NotThreeGraded",
            Error::AdjointOutOfSpan(_) => "AdjointOutOfSpan",
            Error::NoTauImplementation => "NoTauImplementation",
            Error::AmbientMismatch { .. } => "AmbientMismatch",
            Error::NotCartan(_) => "NotCartan",
            Error::RootSpaceNotSimple(_) => "RootSpaceNotSimple",
            Error::NotRegular => "NotRegular",
            Error::NotAdapted => "NotAdapted",
            Error::NotInOpenCell(_) => "NotInOpenCell",
            Error::NotPolar(_) => "NotPolar",
            Error::NotStandard => "NotStandard",
            Error::ModularRelationViolated(_) => "ModularRelationViolated",
            Error::DomainError(_) => "DomainError",
            Error::NotPositiveDefinite(_) => "NotPositiveDefinite",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::UnknownSuite(_) => "UnknownSuite",
        }
    }
}
