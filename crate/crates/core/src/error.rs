use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse operator {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("qutrit count mismatch: {left} vs {right}")]
    QutritCountMismatch { left: usize, right: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },

    #[error("division by zero")]
    DivisionByZero,

    #[error("dense representation of {n} qutrits exceeds the limit of {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("operation supports at most {max} qutrits, got {n}")]
    UnsupportedQutritCount { n: usize, max: usize },

    #[error("operators {a} and {b} do not commute (symplectic form {form})")]
    NonCommuting { a: String, b: String, form: u8 },

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("expected {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },

    #[error("the identity is not allowed here")]
    IdentityOperator,

    #[error("invalid qutrit index set {indices:?} for {n} qutrits")]
    InvalidQutritSet { indices: Vec<usize>, n: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid probability table: {0}")]
    InvalidTable(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}
