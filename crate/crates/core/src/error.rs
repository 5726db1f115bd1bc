use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Group parameters must both be nonzero.
    #[error("invalid parameters ({m}, {n}): both must be nonzero")]
    InvalidParameters { m: i64, n: i64 },

    /// Two values built over different parameter pairs were combined.
    #[error("parameter mismatch: ({0}, {1}) vs ({2}, {3})")]
    ParamsMismatch(i64, i64, i64, i64),

    /// Word or product-expression syntax error.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A ball enumeration grew past the configured vertex cap.
    #[error("ball cap exceeded: more than {cap} vertices")]
    BallCapExceeded { cap: usize },

    /// An orbit or commensuration search ran past the configured cap.
    #[error("orbit cap exceeded: no repeat within {cap} iterations")]
    OrbitCapExceeded { cap: u64 },

    /// A quantity left the range of the requested fixed-width result.
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    /// An operation argument outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Classification requires non-amenable parameters, 2 <= |m| <= n.
    #[error("parameters ({m}, {n}) are outside the classification hypothesis (need 2 <= |m| <= n)")]
    OutOfHypothesis { m: i64, n: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
