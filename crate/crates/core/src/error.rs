use thiserror::Error;

/// Errors raised by matrix, identity and graph operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("arithmetic overflow in exact mode")]
    Overflow,

    #[error("capacity exceeded: {requested} entries requested, cap is {cap}")]
    Capacity { requested: u128, cap: usize },

    #[error("graph is disconnected: vertex {to} unreachable from vertex {from}")]
    Disconnected { from: usize, to: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("matrix is not real symmetric (entry ({row},{col}))")]
    NotSymmetric { row: usize, col: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}
