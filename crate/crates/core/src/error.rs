use thiserror::Error;

/// Errors produced by scale construction, expression handling and integration.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("ratio parameter must satisfy q > 1, got {0}")]
    InvalidRatio(f64),

    #[error("span {span} is not an integer multiple of step {step}")]
    NotCommensurate { span: f64, step: f64 },

    #[error("point {0} does not belong to the time scale")]
    NotInScale(f64),

    #[error("point {0} lies outside the scale's hull")]
    OutOfRange(f64),

    #[error("scale point set exceeds the cap of {cap} points")]
    TooMany { cap: usize },

    #[error("invalid scale: {0}")]
    InvalidScale(String),

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integrator g is not strictly increasing near t = {at}")]
    GNotIncreasing { at: f64 },

    #[error("delta-fine construction exceeded {max_steps} steps (delta too small for the budget)")]
    NonTermination { max_steps: usize },

    #[error("refinement budget exhausted; best enclosure is [{lower}, {upper}] after {refinements} rounds")]
    NoConvergence {
        lower: f64,
        upper: f64,
        refinements: usize,
    },

    #[error("sample {value} at index {index} lies outside its box subinterval")]
    SampleOutOfBox { index: usize, value: f64 },

    #[error("substitution map is not strictly increasing near s = {at}")]
    PhiNotIncreasing { at: f64 },

    #[error("unsupported scale for this operation: {0}")]
    UnsupportedScale(String),
}

pub type Result<T> = std::result::Result<T, Error>;
