use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range 0..={len}")]
    Range { index: usize, len: usize },

    /// A floating result does not fit the target representation.
    #[error("value out of floating range: {0}")]
    FloatRange(String),

    #[error("corrupt codeword: {0}")]
    CorruptCodeword(String),

    #[error("corrupt packet: {0}")]
    CorruptPacket(String),

    #[error("invalid sextet {0}")]
    InvalidSextet(String),

    /// Brute-force enumeration refused because it would not stay desk-scale.
    #[error("resource limit: {0}")]
    Resource(String),

    #[error("input of {bits} bits is not a multiple of k = {k}")]
    InputLength { bits: u64, k: usize },

    #[error("stream corrupt at packet {packet:?}: {reason}")]
    StreamCorrupt {
        packet: Option<usize>,
        reason: String,
    },

    #[error("word literal: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn corrupt_packet(msg: impl Into<String>) -> Self {
        Error::CorruptPacket(msg.into())
    }
}
