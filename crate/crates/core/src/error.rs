use thiserror::Error;

/// Errors surfaced by frame operations.
///
/// `InvalidArgument` marks malformed input (shape mismatches, bad parameters),
/// `Gate` marks a theorem hypothesis that failed on otherwise valid input,
/// `State` marks an operation applied to a family lacking the required
/// classification (e.g. asking for the canonical dual of a non-frame), and
/// `Capacity` marks inputs past a hard enumeration cap.
#[derive(Debug, Error)]
pub enum FrameError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypothesis/gate failure: {0}")]
    Gate(String),
    #[error("state error: {0}")]
    State(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, FrameError>;

pub(crate) fn invalid(msg: impl Into<String>) -> FrameError {
    FrameError::InvalidArgument(msg.into())
}

pub(crate) fn gate(msg: impl Into<String>) -> FrameError {
    FrameError::Gate(msg.into())
}

pub(crate) fn state(msg: impl Into<String>) -> FrameError {
    FrameError::State(msg.into())
}
