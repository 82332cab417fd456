use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("exponent overflow (exponents are limited to 2^31)")]
    ExponentOverflow,

    #[error("polynomial is not homogeneous for the ring grading")]
    NotHomogeneous,

    #[error("grading is not positive: {0}")]
    NonPositiveGrading(String),

    #[error("a standard multigrading is required: {0}")]
    NonStandardGrading(String),

    #[error("the ring modulus must be homogeneous for this operation")]
    NonGradedModulus,

    #[error("variable '{0}' is not a parameter of the ring")]
    NotAParameter(String),

    #[error("assignment must cover exactly the parameter block: {0}")]
    IncompleteAssignment(String),

    #[error("saturation did not stabilize within {0} colon steps")]
    SaturationCap(usize),

    #[error("{what} did not stabilize before n = {cap}")]
    NonStabilization { what: String, cap: usize },

    #[error("dimension {found} exceeds the requested cycle dimension {expected}")]
    DimensionTooLarge { found: i64, expected: i64 },

    #[error("Hilbert polynomial validation failed at {0}")]
    InterpolationMismatch(String),

    #[error("order of the zero ideal is undefined")]
    ZeroIdeal,

    #[error("ideal is not proper")]
    UnitIdeal,

    #[error("genericity failure after {retries} retries (seed {seed}): {check}")]
    GenericityFailure { seed: u64, retries: usize, check: String },

    #[error("first ideal is not contained in the second")]
    NotContained,

    #[error("degenerate fiber: every form vanishes")]
    DegenerateFiber,

    #[error("invalid rational map: {0}")]
    InvalidMap(String),

    #[error("oracle grid too small: {0}")]
    GridTooSmall(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("{0}")]
    Session(String),
}
