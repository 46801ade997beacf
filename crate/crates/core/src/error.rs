use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the engine.
///
/// Input errors (`Parse`, `Json`, `DegreeCap`) are distinguished from
/// mathematical precondition failures by [`Error::is_input_error`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("negative exponent on non-invertible parameter `{0}`")]
    NonInvertibleParameter(&'static str),
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series is not invertible: constant term is not an invertible scalar")]
    NonInvertibleLeadingCoefficient,
    #[error("inverse square root needs constant term exactly 1")]
    LeadingCoefficientNotOne,
    #[error("exponential needs a series with zero constant term")]
    NonZeroConstantTerm,
    #[error("operation requires a constant Poisson matrix")]
    NonConstantLambda,
    #[error("{0} must be symmetric")]
    NotSymmetric(&'static str),
    #[error("{0} must be antisymmetric")]
    NotAntisymmetric(&'static str),
    #[error("coupling scalar must be nonzero")]
    ZeroCoupling,
    #[error("det(1 + X) = 0: X lies outside the domain of the Cayley transform")]
    SingularCayley,
    #[error("{0} is singular")]
    Singular(&'static str),
    #[error("contraction did not terminate within {0} steps")]
    ContractionCapExceeded(usize),
    #[error("cannot specialize a formal parameter to zero")]
    ZeroSpecialization,
    #[error("input degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// True for malformed input as opposed to a violated mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Json(_) | Error::DegreeCap { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
