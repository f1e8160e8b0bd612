use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted after {digits} digits comparing {lhs} with {rhs} (undeclared linear relation?)")]
    PrecisionExhausted {
        digits: usize,
        lhs: String,
        rhs: String,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid constant `{name}`: {reason}")]
    InvalidConstant { name: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty interval: {0}")]
    EmptyInterval(String),
    #[error(
        "box endpoint {value} in coordinate {coord} is not a critical value of the arrangement"
    )]
    ArrangementMismatch { coord: usize, value: String },
    #[error("illegal canonical morphism in degree {degree}: entry ({row}, {col})")]
    IllegalMorphism { degree: i64, row: usize, col: usize },
    #[error("term {index} in degree {degree} is not a free box")]
    NotFree { degree: i64, index: usize },
    #[error("{0} is not in the exponent group")]
    NotInGroup(String),
    #[error("{0} is not in the open cone of the exponent group")]
    NotInOpenCone(String),
    #[error("bad truncation sequence: {0}")]
    BadSequence(String),
    #[error("window too small: critical value {value} in coordinate {coord} exceeds the window")]
    WindowTooSmall { coord: usize, value: String },
    #[error("value {value} in coordinate {coord} is not on the discretization lattice")]
    OffLattice { coord: usize, value: String },
    #[error("linear system infeasible: {0}")]
    Infeasible(String),
    #[error("escape invariant violated at truncation depth {depth}: {reason}")]
    EscapeViolated { depth: usize, reason: String },
    #[error("failed to lift differential: {0}")]
    LiftFailed(String),
    #[error("nonzero differential after collapse in degree {degree}")]
    NonzeroDifferential { degree: i64 },
    #[error("scalar {0} is not defined in the coefficient field")]
    FieldDenominator(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("json error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::UnknownSymbol(_) => "unknown_symbol",
            Error::InvalidConstant { .. } => "invalid_constant",
            Error::Parse(_) => "parse",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::EmptyInterval(_) => "empty_interval",
            Error::ArrangementMismatch { .. } => "arrangement_mismatch",
            Error::IllegalMorphism { .. } => "illegal_morphism",
            Error::NotFree { .. } => "not_free",
            Error::NotInGroup(_) => "not_in_group",
            Error::NotInOpenCone(_) => "not_in_open_cone",
            Error::BadSequence(_) => "bad_sequence",
            Error::WindowTooSmall { .. } => "window_too_small",
            Error::OffLattice { .. } => "off_lattice",
            Error::Infeasible(_) => "infeasible",
            Error::EscapeViolated { .. } => "escape_violated",
            Error::LiftFailed(_) => "lift_failed",
            Error::NonzeroDifferential { .. } => "nonzero_differential",
            Error::FieldDenominator(_) => "field_denominator",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Json(_) => "json",
        }
    }
}
