//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while evaluating or solving.
///
/// Numeric payloads are carried as strings: they exist for diagnostics, and
/// stringifying at the error site avoids dragging precision contexts into
/// error values.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("precision context needs digits >= 10 and guard >= 5 (got digits={digits}, guard={guard})")]
    InvalidPrecision { digits: u32, guard: u32 },

    #[error("log gamma pole at non-positive integer z = {0}")]
    GammaPole(String),

    #[error("hurwitz zeta pole at z = 1")]
    HurwitzPole,

    #[error("hurwitz zeta requires rational q with 0 < q <= 1, got {0}")]
    HurwitzDomain(String),

    #[error("lambert W argument {0} lies below the branch point -1/e")]
    LambertDomain(String),

    #[error("iteration budget exhausted in {op}; working precision may be insufficient")]
    PrecisionExhausted { op: &'static str },

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("character index {index} out of range 1..={phi} for modulus {modulus}")]
    CharacterIndex { modulus: u64, index: usize, phi: usize },

    #[error("L(z) has a pole at z = 1 for the trivial character")]
    LPole,

    #[error("|L| underflowed working precision at distance delta = {delta} from the line; increase delta or digits")]
    ZeroOfL { delta: String },

    #[error("descriptor supplies {available} coefficients but the requested precision needs {required}")]
    InsufficientCoefficients { required: usize, available: usize },

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("bracketing failed for n = {n}: no sign change within radius {radius} of y = {center}{hint}")]
    BracketFailure {
        n: i64,
        center: String,
        radius: String,
        hint: String,
    },

    #[error("scan found no equation root below the ceiling y = {ceiling}")]
    ScanExhausted { ceiling: String },

    #[error("n = {n} solved the phase equation at y = {y} but |L| = {residual} is not small; possible branch slip ({detail})")]
    ResidualTooLarge {
        n: i64,
        y: String,
        residual: String,
        detail: String,
    },

    #[error("staircase violation: {0}")]
    StaircaseViolation(String),

    #[error("records must be contiguous in n: {0}")]
    NonContiguousRecords(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
