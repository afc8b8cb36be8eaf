use thiserror::Error;

use crate::multigraph::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph is not planar ({} edges in obstruction)", .obstruction.len())]
    NonPlanar { obstruction: Vec<EdgeId> },
    #[error("invalid discrepancy function: {0}")]
    Discrepancy(String),
    #[error("internal defect: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
