use thiserror::Error;

/// Errors raised by the verification library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A request needs more room than a table or scan provides.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A query argument is outside the range a table covers.
    #[error("out of range: {0}")]
    Range(String),

    /// Malformed or inconsistent arguments (e.g. gcd(l, mu) != 1).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An analytic estimate was evaluated outside its validity range.
    #[error("outside estimate domain: {0}")]
    Domain(String),

    /// Too few data points to answer the query.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// The hypotheses of a check are not met for the given input.
    #[error("inapplicable: {0}")]
    Inapplicable(String),

    /// Degenerate input such as a vanishing leading coefficient.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A bounded scan ran to its cap without finding what it looks for.
    #[error("scan exhausted: {0}")]
    ScanExhausted(String),

    /// A computed result contradicts a mathematical fact the code relies on.
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
