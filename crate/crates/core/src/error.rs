use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid probability {value} ({context})")]
    InvalidProbability { value: f64, context: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph invariant violated: {0}")]
    Invariant(String),

    #[error("budget k={k} exceeds the {available} available groups (multiset selection disabled)")]
    Budget { k: usize, available: usize },

    #[error("threshold leaves n_s={n_s} high-degree nodes, which is not below k={k}")]
    Threshold { n_s: usize, k: usize },

    #[error("{what} is {value}, above the enumeration cap of {cap}")]
    SizeCap { what: String, value: u64, cap: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }
}
