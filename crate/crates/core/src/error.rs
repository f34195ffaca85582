use thiserror::Error;

/// Errors raised by the library. Every variant describes bad input; the
/// algorithms themselves do not fail once their preconditions hold.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("agent {agent} out of range for a game with {n} agents")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("profile {profile:?} is not valid for action counts {m:?}")]
    InvalidProfile { profile: Vec<usize>, m: Vec<usize> },

    #[error("ranks of agent {agent} are not line-consistent on the line through {profile:?}: {detail}")]
    LineInconsistent {
        agent: usize,
        profile: Vec<usize>,
        detail: String,
    },

    #[error("enumerating {estimate:.3e} games exceeds the cap of {cap}")]
    TooManyGames { estimate: f64, cap: u64 },

    #[error("malformed game file at field `{field}`: {detail}")]
    Format { field: String, detail: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
