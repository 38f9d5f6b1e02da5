use thiserror::Error;

/// Errors raised by environments, spaces, wrappers, the registry and the rasterizer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid action {action} for space {space}")]
    InvalidAction { action: String, space: String },
    #[error("step called before reset")]
    NotReset,
    #[error("step called after the episode terminated; call reset first")]
    StepAfterTerminal,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("unknown environment id {id:?}{}", near_miss_suffix(.suggestions))]
    UnknownEnv {
        id: String,
        suggestions: Vec<String>,
    },
    #[error("environment id {0:?} is already registered")]
    DuplicateEnv(String),
    #[error("malformed environment id {0:?}: expected <Name>-v<version>")]
    MalformedId(String),
}

fn near_miss_suffix(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!("; did you mean {}?", suggestions.join(", "))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
