use thiserror::Error;

/// Errors raised by the library.
///
/// Certification failures (a non-normal index, a misplaced zero) are *not*
/// errors; they are reported as data by the scan and experiment drivers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("empty interval: lower end must be strictly below upper end")]
    EmptyInterval,

    #[error("pole evaluation: point coincides with an atom")]
    PoleEvaluation,

    #[error("supports overlap between measures {0} and {1}")]
    SupportsOverlap(usize, usize),

    #[error("mass point at touching point between measures {0} and {1}")]
    MassPointAtTouch(usize, usize),

    #[error("touch point between measures {0} and {1} does not separate their supports")]
    TouchPointMisplaced(usize, usize),

    #[error("sign violation: {0}")]
    SignViolation(String),

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("zero total mass")]
    ZeroTotalMass,

    #[error("need {needed} moments, got {got}")]
    InsufficientMoments { needed: usize, got: usize },

    #[error("unknown preset: {0}")]
    UnknownPreset(String),

    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),

    #[error("atom budget exceeded: {0}")]
    AtomBudget(String),

    #[error("incompatible systems: {0}")]
    Incompatible(String),

    #[error("sequence not complete: {0}")]
    IncompleteSequence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
