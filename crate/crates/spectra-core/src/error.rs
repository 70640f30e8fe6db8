//! Error type shared across the library.

use thiserror::Error;

/// Everything that can go wrong constructing or evaluating curve data.
///
/// Validation errors name the first violated constraint (pair indices are
/// 1-based, matching the usual subscripts). `Internal` marks arithmetic
/// consistency checks that should be unreachable on valid inputs; hitting
/// one indicates a bug, not bad user data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the list of Puiseux pairs must not be empty")]
    EmptyPairs,

    #[error("pair {index}: n must be at least 2 (got {value})")]
    NTooSmall { index: usize, value: String },

    #[error("pair {index}: l must be at least 1 (got {value})")]
    LNonPositive { index: usize, value: String },

    #[error("pair {index}: NonCoprime, gcd(n, l) = {gcd} but n and l must be coprime")]
    NonCoprime { index: usize, gcd: String },

    #[error("square root of a negative number")]
    NegativeSqrt,

    #[error("precision must be at least 1 bit")]
    InvalidPrecision,

    #[error("r = {r} is outside the domain [0, 1)")]
    ROutOfRange { r: String },

    #[error("grid point at index {index} ({r}) is outside the domain [0, 1)")]
    GridPointOutOfRange { index: usize, r: String },

    #[error("invalid characteristic exponents: {0}")]
    InvalidExponents(String),

    #[error("invalid semigroup generators: {0}")]
    InvalidSemigroup(String),

    #[error("family syntax error at position {pos}: {msg}")]
    FamilySyntax { pos: usize, msg: String },

    #[error("family instantiation at k = {k} is invalid: {source}")]
    FamilyInstantiation {
        k: i64,
        #[source]
        source: Box<Error>,
    },

    #[error("convergence verdict needs at least 3 scan rows (got {got})")]
    InsufficientRows { got: usize },

    #[error("scan rows must have strictly increasing k")]
    NonMonotonicRows,

    #[error("cannot parse {input:?} as a rational: {msg}")]
    ParseRational { input: String, msg: String },

    #[error("internal consistency error: {0}")]
    Internal(String),
}
