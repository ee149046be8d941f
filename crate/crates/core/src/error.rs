use thiserror::Error;

use crate::monoid::join;

/// Largest absolute value accepted for any input integer.
pub const INPUT_LIMIT: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(i64),

    #[error("{{{}}} is not {{{}}}-admissible", join(x), join(c))]
    NotAdmissible { x: Vec<i64>, c: Vec<i64> },

    #[error("invalid (A,B)-sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid removal of {x}: {reason}")]
    InvalidRemoval { x: i64, reason: String },

    #[error("root of the tree does not contain {{{}}}", join(.0))]
    RootMissesX(Vec<i64>),

    #[error("bound {given} exceeds the limit {limit}")]
    BoundTooLarge { given: u64, limit: u64 },

    #[error("family is infinite; an unbounded enumeration would not terminate")]
    InfiniteFamily,

    #[error("closure did not converge after {0} iterations")]
    IterationLimit(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_magnitude(v: i64) -> Result<i64> {
    if v.abs() > INPUT_LIMIT {
        Err(Error::Domain(format!("{v} exceeds 2^31 in absolute value")))
    } else {
        Ok(v)
    }
}
