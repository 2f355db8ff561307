use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown distribution family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters for `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("invalid trimming levels: {0}")]
    InvalidTrim(String),

    #[error("empty trim range: k = {k} > m = {m} for n = {n}")]
    EmptyTrimRange { n: usize, k: usize, m: usize },

    #[error("density is undefined or not positive at the {which} trimming quantile {at}")]
    DensityUnavailable { which: &'static str, at: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {err:e})")]
    QuadratureFailed { tol: f64, err: f64 },

    #[error("sample has zero Winsorized variance")]
    DegenerateVariance,

    #[error("kernel density estimate at a trimming quantile is not positive")]
    DegenerateDensity,

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("probability {0} outside the supported range")]
    ProbabilityOutOfRange(f64),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown diagnostic `{0}`")]
    UnknownDiagnostic(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}
