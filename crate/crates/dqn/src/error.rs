use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DqnError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("replay buffer holds {have} transitions but a batch needs {need}")]
    NotEnoughSamples { have: usize, need: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("empty batch")]
    EmptyBatch,
    #[error(transparent)]
    Env(#[from] gymkit::Error),
}

pub type Result<T, E = DqnError> = std::result::Result<T, E>;
