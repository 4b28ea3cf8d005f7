use thiserror::Error;

pub type Result<T, E = BanditError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BanditError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("reward {0} outside [0, 1]")]
    InvalidReward(f64),

    #[error("corruption budget exceeded: spending {attempted} would exceed budget {budget}")]
    BudgetExceeded { attempted: f64, budget: f64 },

    #[error("invalid configuration for `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("learner invariant violated: {0}")]
    Invariant(String),
}

impl BanditError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        BanditError::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}
