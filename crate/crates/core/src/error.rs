use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error("zero direction")]
    ZeroDirection,
    #[error("empty input")]
    EmptyInput,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("mixed arity: {0}")]
    MixedArity(String),
    #[error("target degree {target} is below the maximal exponent sum {needed}")]
    DegreeTooSmall { target: i64, needed: i64 },
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("empty variety")]
    EmptyVariety,
    #[error("not 3-valent (valence {0})")]
    NotThreeValent(usize),
    #[error("genus defined for smooth curves only")]
    NotSmooth,
    #[error("not transversal; use stable_intersection")]
    NotTransversal,
    #[error("no generic perturbation direction found")]
    NoGenericDirection,
    #[error("not elliptic: {0}")]
    NotElliptic(String),
    #[error("point is not on the cycle")]
    NotOnCycle,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("no good configuration found")]
    NoGoodConfiguration,
    #[error("divisor has degree {0}, expected 0")]
    NonZeroDegree(i64),
    #[error("invalid viewport: {0}")]
    InvalidViewport(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, TropError>;

impl TropError {
    /// Process exit code: 2 for malformed input, 3 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            TropError::EmptyInput
            | TropError::Syntax { .. }
            | TropError::MixedArity(_)
            | TropError::InvalidRational(_)
            | TropError::DegreeTooSmall { .. } => 2,
            _ => 3,
        }
    }
}
