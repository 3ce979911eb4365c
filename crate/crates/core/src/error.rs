use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not orthogonal (max deviation {deviation:e})")]
    NotOrthogonal { deviation: f64 },

    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("{name} must be strictly positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("frame speed |beta| = {0} must be below 1")]
    Superluminal(f64),

    #[error("velocity composition is singular: 1 + v*beta = 0 (infinite coordinate velocity)")]
    InfiniteVelocity,

    #[error(
        "return leg cannot reach the origin: channel speed {u} does not exceed frame speed {beta}"
    )]
    UnreachableReturn { u: f64, beta: f64 },

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("sample count must be at least 1")]
    EmptySample,

    #[error("sweep needs at least 2 steps, got {0}")]
    TooFewSteps(usize),

    #[error("sweep range is empty: theta_min {min} must be below theta_max {max}")]
    EmptyRange { min: f64, max: f64 },

    #[error("bit list is empty")]
    EmptyBits,

    #[error("symbol angles {theta0} and {theta1} give indistinguishable statistics")]
    IndistinguishableSymbols { theta0: f64, theta1: f64 },
}
