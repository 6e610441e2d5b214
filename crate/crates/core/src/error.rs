use thiserror::Error;

/// Errors produced by the library.
///
/// Variants fall into three classes, see [`Error::class`]: malformed
/// parameters, exhausted search or evaluation budgets, and failed
/// postcondition re-checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(f64),

    #[error("invalid exponent p = {0} (expected 0 or p >= 1)")]
    InvalidExponent(f64),

    #[error("exponent mismatch: p = {0} vs p = {1}")]
    ExponentMismatch(f64, f64),

    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("index {index} out of range (valid 1..={len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("quadrature did not converge within {evaluations} evaluations (error estimate {estimate:e})")]
    QuadratureBudget { evaluations: usize, estimate: f64 },

    #[error("search cap {cap} exhausted")]
    CapExhausted { cap: u64 },

    #[error("coefficient cap {cap} below required {required}")]
    CoefficientCapTooSmall { cap: u64, required: u64 },

    #[error("dynamic program exceeded {limit} states")]
    StateBudget { limit: usize },

    #[error("grid too coarse: tolerance {tol} does not exceed spacing {spacing}")]
    GridTooCoarse { tol: f64, spacing: f64 },

    #[error("generator too short: truncation level {required} needed, {available} available (tail deficit {deficit:e})")]
    GeneratorTooShort {
        required: usize,
        available: usize,
        deficit: f64,
    },

    #[error("digit depth {depth} insufficient: {reason}")]
    InsufficientDepth { depth: usize, reason: String },

    #[error("element is not in Q at depth {depth}")]
    NotInQ { depth: usize },

    #[error("integer {0} does not fit the base window")]
    WindowOverflow(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parameter,
    Budget,
    Postcondition,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::QuadratureBudget { .. }
            | Error::CapExhausted { .. }
            | Error::StateBudget { .. }
            | Error::GeneratorTooShort { .. }
            | Error::InsufficientDepth { .. } => ErrorClass::Budget,
            Error::Postcondition(_) => ErrorClass::Postcondition,
            _ => ErrorClass::Parameter,
        }
    }

    pub(crate) fn out_of_range(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::OutOfRange {
            name,
            value,
            expected,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
