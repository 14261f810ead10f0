use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A point lies outside the circular domain of the function.
    #[error("point out of domain: {0}")]
    OutOfDomain(String),

    /// Two functions defined on different domains were combined.
    #[error("domain mismatch")]
    DomainMismatch,

    /// Division by zero or inversion of a zero value.
    #[error("division by zero: {0}")]
    Singular(String),

    /// The normal function vanishes identically, so no reciprocal exists.
    #[error("normal function vanishes identically")]
    DegenerateNormal,

    /// An argument violates a precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A computation produced internally inconsistent results, signalling
    /// numerical breakdown rather than a caller mistake.
    #[error("numerical inconsistency: {0}")]
    Inconsistency(String),

    /// An operation requiring a bounded domain was applied to an unbounded one.
    #[error("domain region is unbounded")]
    Unbounded,

    /// A function-spec document failed to parse or validate.
    #[error("spec error at {pointer}: {message}")]
    Spec { pointer: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
