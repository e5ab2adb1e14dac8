use thiserror::Error;

/// Configuration parsing and validation failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{key} {reason}")]
    Violation { key: &'static str, reason: String },
    #[error("unknown key \"{0}\"")]
    UnknownKey(String),
    #[error("invalid value \"{value}\" for {key}: expected {expected}")]
    InvalidValue { key: String, value: String, expected: &'static str },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<ConfigError>,
    },
}

/// Errors raised by the numerical and simulation engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("time {t} outside [0, {horizon}]")]
    OutOfDomain { t: f64, horizon: f64 },
    #[error("discovery zone index {index} out of range 1..={count}")]
    DzIndex { index: usize, count: usize },
    #[error("negative UE count {0}")]
    NegativeCount(f64),
    #[error("zone {expected} must be stepped next, got {got}")]
    OutOfOrder { expected: usize, got: usize },
    #[error("average delay undefined: no UE was discovered")]
    NoDiscoveries,
    #[error("quadrature did not converge on [{a}, {b}] (error estimate {estimate:e})")]
    Quadrature { a: f64, b: f64, estimate: f64 },
    #[error("invalid sweep: {0}")]
    Sweep(String),
    #[error("unknown preset \"{0}\"")]
    UnknownPreset(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
