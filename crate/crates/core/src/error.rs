use crate::runtime::PartyId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("value out of fixed-point range: {0}")]
    Range(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("transport error with {peer}: {reason}")]
    Transport { peer: PartyId, reason: String },

    #[error("protocol error: {0}")]
    Protocol(String),

    #[error("handshake failed with {peer}: {reason}")]
    Handshake { peer: PartyId, reason: String },

    #[error("malformed input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn transport(peer: PartyId, reason: impl std::fmt::Display) -> Self {
        Error::Transport {
            peer,
            reason: reason.to_string(),
        }
    }
}
