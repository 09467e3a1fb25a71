use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mass assigned to the empty set")]
    EmptySetAssigned,
    #[error("masses sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },
    #[error("negative weight {weight}")]
    NegativeWeight { weight: f64 },
    #[error("unknown frame element: {0}")]
    UnknownElement(String),
    #[error("invalid frame of discernment: {0}")]
    InvalidFrame(String),
    #[error("frame has {actual} elements, expected {expected}")]
    WrongFrameSize { expected: usize, actual: usize },

    #[error("parameter {name} must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("pure-strategy index {0} out of range (expected 0 or 1)")]
    IndexOutOfRange(usize),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("Monte-Carlo estimate requested with zero samples")]
    ZeroSamples,

    #[error("degenerate game: the indifference equation has a zero coefficient")]
    DegenerateGame,
    #[error("game has no interior mixed ESS")]
    NoMixedEss,
    #[error("delta {delta} outside [0, {max}]")]
    DeltaOutOfRange { delta: f64, max: f64 },
    #[error("tolerance must be non-negative, got {0}")]
    InvalidTolerance(f64),

    #[error("strategy roster is empty")]
    EmptyRoster,
    #[error("population state invalid: {0}")]
    InvalidPopulation(String),
    #[error("initial mutant share {0} outside (0, 0.5)")]
    EpsilonOutOfRange(f64),
    #[error("max_steps must be at least 1")]
    ZeroSteps,

    #[error("parse error: {0}")]
    Parse(String),
}
