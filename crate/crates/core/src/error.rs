use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A documented precondition of the operation was not met.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested size exceeds what the generators support.
    #[error("capacity exceeded: requested {requested}, limit {limit}")]
    Capacity { requested: u64, limit: u64 },

    /// The leading coefficient in `w` vanishes at the candidate singular point.
    #[error("degenerate leading coefficient: a(z) = 0 at z = {0}")]
    DegenerateLeadingCoefficient(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}
