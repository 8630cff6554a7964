use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("formal Gaussian: {0}")]
    FormalGaussian(&'static str),

    #[error("kernel too oscillatory for quadrature: |t| = {t:e} is below t_min = {t_min:e}")]
    KernelTooOscillatory { t: f64, t_min: f64 },

    #[error("time too small for domain: rescaled argument leaves the grid span at t = {t} (t_min = {t_min:e})")]
    TimeTooSmallForDomain { t: f64, t_min: f64 },

    #[error("rescaled points out of domain at t = {t}")]
    OutOfDomain { t: f64 },

    #[error("time {t} outside [{lo}, {hi}]")]
    TimeOutOfRange { t: f64, lo: f64, hi: f64 },

    #[error("domain too small for weight gamma = {gamma}")]
    WeightTailUnresolved { gamma: f64 },

    #[error("beyond Hardy endpoint: T/(alpha*beta) = {ratio} > 1/4")]
    BeyondEndpoint { ratio: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("too few samples above the floor: {found} < {needed}")]
    TooFewSamples { found: usize, needed: usize },

    #[error("slices not boundary-admissible at t = {times:?}")]
    InadmissibleSlices { times: Vec<f64> },

    #[error("times are not uniformly spaced")]
    NonUniformTimes,

    #[error("need at least {needed} times, got {found}")]
    TooFewTimes { found: usize, needed: usize },

    #[error("g(0) != 0; subtract the Gaussian first (mass {mass:e})")]
    NonzeroMass { mass: f64 },

    #[error("eta = {eta} outside the dual grid span")]
    EtaOutOfSpan { eta: f64 },

    #[error("unresolvable weighted factor: {0}")]
    UnresolvableWeight(&'static str),

    #[error("diverging at cutoff {cutoff}")]
    Diverging { cutoff: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}
