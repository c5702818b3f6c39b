use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An enumeration or scan would exceed its configured size limit.
    #[error("{what}: predicted size {predicted} exceeds cap {cap}")]
    Resource {
        what: &'static str,
        predicted: String,
        cap: u64,
    },

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
