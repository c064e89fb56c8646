use thiserror::Error;

/// Errors raised by Schmidt-vector construction, order tests and searches.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient {value} at position {index} is negative")]
    NegativeCoefficient { index: usize, value: f64 },

    #[error("coefficients sum to {sum}, which is not within 1e-6 of 1")]
    NotNormalizable { sum: f64 },

    #[error("empty coefficient list")]
    Empty,

    #[error("value {value} outside the domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("expected effective rank {expected}, got {found}")]
    WrongRank { expected: usize, found: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("coefficient at index {index} is zero; the entropy gradient diverges there")]
    BoundaryCoefficient { index: usize },

    #[error("finite-difference step {step} too large for smallest coefficient {min_coeff}")]
    StepTooLarge { step: f64, min_coeff: f64 },

    #[error("first state cannot be converted into the second")]
    NotConvertible,

    #[error("states are equivalent (same Schmidt coefficients)")]
    EquivalentPair,

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("solved vector {found:?} differs from input {expected:?}")]
    UniquenessViolated { found: Vec<f64>, expected: Vec<f64> },

    #[error(
        "target entropy {target} unreachable with top coefficient {beta1}: \
         reachable range [{min_entropy}, {max_entropy}]"
    )]
    Infeasible {
        beta1: f64,
        target: f64,
        min_entropy: f64,
        max_entropy: f64,
    },

    #[error("requested top coefficient {beta1} equals the input's top coefficient")]
    SharedTopCoefficient { beta1: f64 },

    #[error("bisection did not converge in {iterations} iterations (bracket width {width})")]
    ConvergenceFailure { iterations: usize, width: f64 },

    #[error("no coefficient shared at index {index}: {a} vs {b}")]
    NoSharedCoefficient { index: usize, a: f64, b: f64 },

    #[error("shared coefficient {kappa} leaves no mass to renormalize")]
    DegenerateKappa { kappa: f64 },

    #[error("empty parameter range [{lo}, {hi}]")]
    EmptyRange { lo: f64, hi: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("malformed Schmidt vector JSON: {0}")]
    InvalidJson(String),
}

impl Error {
    /// Stable machine-readable name, used by the CLI on standard error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NegativeCoefficient { .. } => "NegativeCoefficient",
            Error::NotNormalizable { .. } => "NotNormalizable",
            Error::Empty => "Empty",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::WrongRank { .. } => "WrongRank",
            Error::RankMismatch(..) => "RankMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::BoundaryCoefficient { .. } => "BoundaryCoefficient",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::NotConvertible => "NotConvertible",
            Error::EquivalentPair => "EquivalentPair",
            Error::NoSolution(_) => "NoSolution",
            Error::UniquenessViolated { .. } => "UniquenessViolated",
            Error::Infeasible { .. } => "Infeasible",
            Error::SharedTopCoefficient { .. } => "SharedTopCoefficient",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::NoSharedCoefficient { .. } => "NoSharedCoefficient",
            Error::DegenerateKappa { .. } => "DegenerateKappa",
            Error::EmptyRange { .. } => "EmptyRange",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidJson(_) => "InvalidJson",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
