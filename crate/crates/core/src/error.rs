use std::fmt;

use thiserror::Error;

/// Errors raised by the library. Mathematical "no" answers (a non-admissible
/// descriptor, a failed lemma check) are values, not errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {letter}{rank}")]
    InvalidType { letter: char, rank: usize },

    #[error("vector {0:?} is not a root of the system")]
    NotARoot(Vec<i64>),

    #[error("root {0:?} is not simple in the given base")]
    NotSimple(Vec<i64>),

    #[error("set is not convex: root {witness:?} lies in its cone but not in the set")]
    NotConvex { witness: Vec<i64> },

    #[error("resource guard: {what} exceeds the limit {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("weight {0:?} is not dominant integral")]
    NotDominant(Vec<i64>),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dense module (mu={mu}, tau0={tau0}) is not simple")]
    NotSimpleModule { mu: String, tau0: String },

    #[error("point is not on the variety: generator `{generator}` evaluates to {value}")]
    InvalidPoint { generator: String, value: String },

    #[error("evaluation points are not pairwise distinct (index {0} and {1})")]
    DuplicatePoint(usize, usize),

    #[error("no interpolating idempotents up to degree {0}")]
    DegreeCap(u32),

    #[error("a window is required because factor {0} has infinite support")]
    WindowRequired(usize),

    #[error("weight space at {0} is infinite dimensional")]
    InfiniteWeightSpace(String),

    #[error("descriptors live over different rings or Lie algebras")]
    Incompatible,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl fmt::Display) -> Self {
        Error::Parse(msg.to_string())
    }
}
