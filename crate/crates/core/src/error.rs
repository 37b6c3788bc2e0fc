use thiserror::Error;

/// Errors raised by the counting kernels, the arrangement codecs, the
/// bijections and the series evaluators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{formula}: numerator {numerator} is not divisible by {divisor}")]
    InexactDivision { formula: &'static str, numerator: String, divisor: String },

    #[error("{formula}: produced a negative count")]
    NegativeCount { formula: &'static str },

    #[error("requested {k} empty sections but there are only {m} bars")]
    TooManyEmptySections { m: usize, k: usize },

    #[error("memo table conflict at {key}: {existing} ({existing_method}) vs {incoming} ({incoming_method})")]
    TableConflict {
        key: String,
        existing: String,
        existing_method: &'static str,
        incoming: String,
        incoming_method: &'static str,
    },

    #[error("malformed arrangement text {text:?}: {reason}")]
    Malformed { text: String, reason: String },

    #[error("element {element} is outside 1..={len}")]
    ElementOutOfRange { element: usize, len: usize },

    #[error("element {0} appears more than once")]
    DuplicateElement(usize),

    #[error("element {0} is missing")]
    MissingElement(usize),

    #[error("expected {expected} bars, found {found}")]
    WrongBarCount { expected: usize, found: usize },

    #[error("invalid bar labels: {0}")]
    InvalidLabels(String),

    #[error("value outside the codomain: {0}")]
    OutsideCodomain(String),

    #[error("invalid cycle structure: {0}")]
    InvalidCycles(String),

    #[error("series has zero constant term")]
    ZeroConstantTerm,

    #[error("coefficient {index} scaled by index! is not a nonnegative integer: {value}")]
    NonIntegralCoefficient { index: usize, value: String },

    #[error("argument {value} outside the domain [-1, 1]")]
    Domain { value: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("precision of {bits} bits cannot certify error bound {requested} (reached {achieved})")]
    PrecisionTooLow { bits: u32, requested: String, achieved: String },
}

pub type Result<T> = std::result::Result<T, Error>;
