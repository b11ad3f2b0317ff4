use thiserror::Error;

/// Errors raised by the library. Domain errors map to CLI exit code 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed descriptor `{input}`: {reason}")]
    Descriptor { input: String, reason: String },
    #[error("ring rejected: {0}")]
    RingRejected(String),
    #[error("ring too large: {0} elements (limit {1})")]
    RingTooLarge(usize, usize),
    #[error("element belongs to a different ring")]
    RingMismatch,
    #[error("cannot parse element `{input}`: {reason}")]
    ElementParse { input: String, reason: String },
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("pair ({0}, {1}) violates t*th(t) = u + th(u)")]
    NotAForm(String, String),
    #[error("parameter invalid for class: {0}")]
    BadParam(String),
    #[error("unsupported root system {0}")]
    UnsupportedSystem(String),
    #[error("automorphism {0} not available for this system")]
    BadAutomorphism(String),
    #[error("unknown root {0}")]
    UnknownRoot(String),
    #[error("classes are proportional: {0}")]
    Proportional(String),
    #[error("cannot parse word: {0}")]
    WordParse(String),
    #[error("representation mismatch: {0}")]
    Representation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("unbound variable `{0}`")]
    UnboundVar(String),
}

pub type Result<T> = std::result::Result<T, Error>;
