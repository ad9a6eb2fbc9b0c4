use thiserror::Error;

/// Errors raised by the solvers, oracles and file formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input violates an operation's contract (unknown edge, odd cycle
    /// where an alternating one was expected, non-bipartite graph, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// An enumeration or search exceeded its configured cap.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// A documented precondition of the algorithm does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
