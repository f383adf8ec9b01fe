use thiserror::Error;

use crate::topology::NodeId;

/// Errors raised while building or running a network.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("causality violation at {node} slot {slot}: requested slot {requested}")]
    Causality {
        node: NodeId,
        slot: i64,
        requested: i64,
    },

    #[error("history window exceeded at {node} slot {slot}: depth {depth} > window {window}")]
    HistoryWindow {
        node: NodeId,
        slot: i64,
        depth: i64,
        window: i64,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
