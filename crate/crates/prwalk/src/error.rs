//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors produced by model validation, domain checks and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A persistence probability lies outside the open interval (0, 1).
    #[error("{name} = {value} must lie strictly inside (0, 1)")]
    InvalidParam { name: &'static str, value: f64 },

    /// A (x, k) pair violates the support constraints of an n-step walk.
    #[error("(x = {x}, k = {k}) is outside the support of a walk with n = {n} steps")]
    OffSupport { n: u32, x: i64, k: u32 },

    /// Generating-function evaluation requires w > 0.
    #[error("generating function requires w > 0, got w = {w}")]
    NonPositiveW { w: f64 },

    /// Exhaustive enumeration is capped to keep 2^n tractable.
    #[error("exhaustive enumeration supports n <= {max}, got n = {n}")]
    EnumerationTooLarge { n: u32, max: u32 },

    /// Sample statistics outside the image of the moment map.
    /// `constraint` names the violated inequality.
    #[error("inadmissible sample statistics: {constraint}")]
    InadmissibleStats { constraint: String },

    /// No (eps_r, eps_l) in (0,1)^2 reproduces the requested (beta, force).
    #[error(
        "no persistence parameters in (0,1)^2 solve beta = {beta}, force = {force} \
         (quadratic discriminant {discriminant})"
    )]
    NoThermoSolution {
        beta: f64,
        force: f64,
        discriminant: f64,
    },

    /// Both quadratic roots are admissible; the inverse map is ambiguous.
    /// Not expected to occur for real (beta, force); reported loudly if it does.
    #[error("ambiguous inverse parameterization for beta = {beta}, force = {force}: both roots admissible")]
    AmbiguousThermoSolution { beta: f64, force: f64 },

    /// Not enough data for the requested statistical operation.
    #[error("{0}")]
    InsufficientData(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
