use thiserror::Error;

/// Errors raised across the crate. Validation problems are reported at
/// construction; nothing is silently renormalized.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid reward support: {0}")]
    InvalidSupport(String),

    #[error("invalid probability table: {0}")]
    InvalidProbabilities(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("arm index {arm} out of range for {num_arms} arms")]
    ArmOutOfRange { arm: usize, num_arms: usize },

    #[error("reward {0} is not a level of the declared support")]
    UnknownReward(f64),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("risk level alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("invalid CDF: {0}")]
    InvalidCdf(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("arm {0} has zero observational mass; its do-probability is not bounded by the data")]
    UnidentifiableArm(usize),

    #[error("inconsistent inputs: {0}")]
    Infeasible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
