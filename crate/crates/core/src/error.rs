use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be prime, got {0}")]
    NotPrime(u32),
    #[error("prime {0} outside the supported range 2..=97")]
    PrimeOutOfRange(u32),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("expected a univariate input: {0}")]
    NotUnivariate(String),
    #[error("not a complex: d^{} d^{} has nonzero entry {entry}", .degree + 1, .degree)]
    NonComplex { degree: usize, entry: String },
    #[error("connection is not flat: {0}")]
    NonFlat(String),
    #[error("variety is not smooth: {0}")]
    NonSmooth(String),
    #[error("operator degree {degree} exceeds the guard {limit}")]
    DegreeGuard { degree: u32, limit: u32 },
    #[error("truncated computation did not stabilize at D = {truncation}: window {window:?}")]
    Unstabilized { truncation: u32, window: Vec<Vec<u64>> },
    #[error("quotient is infinite-dimensional (cap {cap})")]
    InfiniteDimensional { cap: u32 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid plan: {0}")]
    Plan(String),
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short machine-readable tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) | Error::PrimeOutOfRange(_) => "modulus",
            Error::RingMismatch(..) => "ring_mismatch",
            Error::VariableOutOfRange { .. } => "variable_out_of_range",
            Error::Parse { .. } => "parse",
            Error::Shape(_) => "shape",
            Error::NotUnivariate(_) => "not_univariate",
            Error::NonComplex { .. } => "non_complex",
            Error::NonFlat(_) => "non_flat",
            Error::NonSmooth(_) => "non_smooth",
            Error::DegreeGuard { .. } => "degree_guard",
            Error::Unstabilized { .. } => "unstabilized",
            Error::InfiniteDimensional { .. } => "infinite_or_above",
            Error::InternalInconsistency(_) => "internal_inconsistency",
            Error::Plan(_) => "plan",
            Error::Io { .. } => "io",
        }
    }
}
