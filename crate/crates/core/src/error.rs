use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two operands live in exterior algebras of different rank.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("exterior dimension {0} exceeds the supported maximum of 64 generators")]
    DimensionTooLarge(usize),

    #[error("polynomial rings support at most {max} variables, got {got}")]
    TooManyVariables { got: usize, max: usize },

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid structure: {0}")]
    Invalid(String),

    /// An identity that must hold failed; `witness` names the offending inputs.
    #[error("{identity} fails at {witness}")]
    IdentityFailure { identity: String, witness: String },

    /// A hypothesis of a construction is not met (for example a non-diagonalizable operator).
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
