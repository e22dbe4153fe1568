use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty set")]
    EmptySet,
    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group of order {order} exceeds limit {limit}")]
    GroupOrderLimit { order: u64, limit: u64 },
    #[error("group too large for subgroup enumeration (order {0}, limit 4096)")]
    GroupTooLarge(usize),
    #[error("element {0} out of range for group of order {1}")]
    ElementOutOfRange(u64, usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid number: {0}")]
    Parse(String),
    #[error("invalid angle: {0}")]
    InvalidAngle(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("expected single interval")]
    ExpectedSingleInterval,
    #[error("window exhausted: sequence needs {needed}, window is {window}")]
    WindowExhausted { needed: i64, window: i64 },
    #[error("window too short: length {length}, need at least {needed}")]
    WindowTooShort { length: usize, needed: usize },
    #[error("standing assumption violated: mu(A) + mu(B) = {0} >= 1")]
    StandingAssumption(String),
    #[error("invalid sequence family: {0}")]
    InvalidFamily(String),
    #[error("no candidate set with measure below {0}")]
    NoCandidate(String),
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config { path: path.into(), message: message.into() }
    }
}
