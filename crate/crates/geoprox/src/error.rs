use thiserror::Error;

/// Errors produced by geometry, set, operator, iteration and I/O layers.
#[derive(Error, Debug)]
pub enum Error {
    /// Two points (or a point and a set) belong to different spaces.
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    /// An argument is outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is not defined on the given model space.
    #[error("unsupported on this space: {0}")]
    UnsupportedSpace(String),

    /// The operation is not available for the given combination of inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A caller-asserted precondition failed (e.g. a claimed fixed point is not fixed).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A trace cannot be classified or validated with the data it contains.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// The data show divergence where a bounded sequence was expected.
    #[error("divergence detected: {0}")]
    Diverged(String),

    /// Config file could not be parsed; names the offending field or line.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn mismatch(what: impl Into<String>) -> Self {
        Error::SpaceMismatch(what.into())
    }

    pub(crate) fn domain(what: impl Into<String>) -> Self {
        Error::Domain(what.into())
    }
}
