use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd undefined: both arguments are zero")]
    GcdUndefined,

    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at (U, V) = ({u}, {v})")]
    VanishingDenominator { u: String, v: String },

    #[error("class not integral; classical limit undefined")]
    NotPolynomial,

    #[error("basis coordinates not integral: {0}")]
    BasisNotIntegral(String),

    #[error("singular system: rank {rank} of {size}")]
    Singular { rank: usize, size: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cell {cell} is not addable to {partition}")]
    NotAddable { partition: String, cell: String },

    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },

    #[error("q_0 = 0 by convention")]
    QZero,

    #[error("operator index must be positive, got {0}")]
    NonPositiveIndex(i64),

    #[error("degree mismatch: cannot combine operators of conformal degree {left} and {right}")]
    DegreeMismatch { left: i64, right: i64 },

    #[error("inner product across mixed degrees {0:?}")]
    MixedDegrees(Vec<usize>),

    #[error("truncation overflow: weight {degree} exceeds max_weight {max_weight}")]
    TruncationOverflow { degree: usize, max_weight: usize },

    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),

    #[error("convention mismatch: {0}")]
    ConventionMismatch(String),
}
