use thiserror::Error;

/// Crate-wide error type. Guard breaches are kept distinct from contract
/// violations so callers (notably the CLI) can map them to different exit
/// codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("size guard exceeded: {what} = {actual} > {limit}")]
    GuardExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid bramble: {0}")]
    InvalidBramble(String),

    #[error("invalid cycle-union spec: {0}")]
    InvalidSpec(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
