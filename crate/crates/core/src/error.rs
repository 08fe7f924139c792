use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based and counts comment lines.
    #[error("{message} on line {line}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the supplied {0} order does not make the election an interval election")]
    UnverifiedOrder(&'static str),

    /// A configured search cap would be exceeded; nothing is approximated.
    #[error("resource limit exceeded: {what} is {size}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        size: u128,
        cap: u128,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
