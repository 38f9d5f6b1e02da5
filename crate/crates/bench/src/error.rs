use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("reports are not comparable: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Env(#[from] gymkit::Error),
    #[error(transparent)]
    Dqn(#[from] gymkit_dqn::DqnError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
