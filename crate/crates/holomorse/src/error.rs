use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("zero exponent in a denominator factor")]
    ZeroDenominator,

    #[error("chamber is not generic: pairing with {exponent} vanishes")]
    NonGenericChamber { exponent: String },

    #[error("weight assignment is not generic: pairing with {exponent} vanishes")]
    NonGenericWeights { exponent: String },

    #[error("fixed point `{0}` has no weights and no explicit contribution")]
    MissingWeights(String),

    #[error("fixed point `{0}` has neither dual data nor a canonical trace")]
    MissingDual(String),

    #[error("fixed point `{0}` needs an explicit contribution for this operation")]
    SingularPoint(String),

    #[error("grading degree {degree} exceeds the complex dimension")]
    GradingOutOfRange { degree: u32 },

    #[error("coefficient {coeff} at {at} is not a nonnegative integer")]
    NotNonnegativeInteger { coeff: String, at: String },

    #[error("top-degree consistency fails at {at}: M_n - P_n = {lhs}, Q_(n-1) = {rhs}")]
    InconsistentTop { at: String, lhs: String, rhs: String },

    #[error("expected a real value for {what}, got {value}")]
    NotReal { what: String, value: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
