use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("circle maximum did not settle after {samples} samples (last change {last_change:e})")]
    Oscillation { samples: usize, last_change: f64 },

    #[error("zero on or near every candidate circle around radius {radius}")]
    BoundaryZero { radius: f64 },

    #[error("winding integral did not stabilise at an integer (last raw value {raw})")]
    Unresolved { raw: f64 },

    #[error("need at least {needed} nonzero coefficients, found {found}")]
    TooFewCoefficients { needed: usize, found: usize },

    #[error("divided differences overflowed; smallest node gap {min_gap:e}")]
    Conditioning { min_gap: f64 },

    #[error("measured {measured:e} exceeds the bound {bound:e} but not the rounding floor {floor:e}")]
    RoundingFloor { measured: f64, bound: f64, floor: f64 },

    #[error("repeated node {node} away from the origin (confluent data only supported at 0)")]
    DuplicateNode { node: String },

    #[error("precondition not met: {0}")]
    NotApplicable(String),

    #[error("doubling series does not converge over a horizon of {horizon} terms")]
    Diverges { horizon: usize },

    #[error("linearized Pade system only admits denominators vanishing at 0")]
    Degenerate,

    #[error("linearized system has a {dim}-dimensional solution space")]
    MultipleSolutions { dim: usize },

    #[error("empty circle intersection on a grid of {grid} points")]
    GridTooCoarse { grid: usize },

    #[error("sequence does not look summable (tail decay exponent {exponent:.3})")]
    NotSummable { exponent: f64 },

    #[error("no curve of degree <= {cap} through the point set")]
    NoCurveUpToCap { cap: usize, singular_profile: Vec<f64> },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
