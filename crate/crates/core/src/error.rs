use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("value {0} lies outside [0, 1]")]
    OutOfUnitInterval(String),

    #[error("empty interval: {lo} is not below {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("empty truncation")]
    EmptyTruncation,

    #[error("point {point} is unresolved at depth {depth}")]
    UnknownAtDepth { point: String, depth: usize },

    #[error("intervals {0} and {1} overlap")]
    Overlap(String, String),

    #[error("signature is incomplete (truncated at depth {0})")]
    IncompleteSignature(usize),

    #[error("t-norms are not isomorphic: {0}")]
    NotIsomorphic(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bound {bound} is insufficient: {detail}")]
    InsufficientBound { bound: &'static str, detail: String },

    #[error("structure sizes differ: {0} vs {1}")]
    SizeMismatch(u64, u64),

    #[error("structure is qualified by unresolved locates")]
    Qualified,

    #[error("orders disagree on the pair ({0}, {1})")]
    OrdersDisagree(u64, u64),

    #[error("back-and-forth stalled after {matched} pairs: {reason}")]
    BackAndForthStalled { matched: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
