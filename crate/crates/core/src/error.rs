//! Shared error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Malformed input data (parsing, validation of external files).
    #[error("invalid input{}: {reason}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    InvalidInput { line: Option<usize>, reason: String },

    /// The parent links of a would-be forest contain a cycle.
    #[error("parent links contain a cycle through vertices {0:?}")]
    ForestCycle(Vec<usize>),

    /// An edge of the graph joins two forest vertices that are not in
    /// ancestor-descendant relation.
    #[error("edge ({u}, {v}) violates the ancestor property")]
    ForestViolation { u: usize, v: usize },

    /// A tree decomposition failed validation.
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    /// An exhaustive routine refused an instance that is too large.
    #[error("instance too large for exhaustive search: n = {n}, limit = {limit}")]
    TooLarge { n: usize, limit: usize },

    /// Integer overflow in weight arithmetic.
    #[error("integer overflow in weight arithmetic")]
    Overflow,

    /// The graph admits no perfect matching; carries the maximum-size
    /// matching that was found.
    #[error("graph has no perfect matching (best matching has {} edges)", best.len())]
    NoPerfectMatching { best: Box<crate::matching::Matching> },

    /// The supplied path is not a shortest path.
    #[error("supplied path is not a shortest path: {0}")]
    NotShortestPath(String),

    /// An operation requiring non-negative weights saw a negative one.
    #[error("negative weight {w} on edge ({u}, {v})")]
    NegativeWeight { u: usize, v: usize, w: i64 },

    /// A problem callback failed inside the divide-and-conquer driver.
    #[error("callback failed at subtree root {root}: {source}")]
    Callback {
        root: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub fn input(line: impl Into<Option<usize>>, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            line: line.into(),
            reason: reason.into(),
        }
    }
}
