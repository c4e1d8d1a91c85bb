use thiserror::Error;

use crate::tree::NodeId;

/// A tree signature that does not describe a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("malformed signature: illegal byte {byte:#04x} at offset {offset}")]
    IllegalByte { offset: usize, byte: u8 },
    #[error("malformed signature: ascent above the root at offset {offset}")]
    AboveRoot { offset: usize },
    #[error("malformed signature: odd length {len}")]
    OddLength { len: usize },
    #[error("malformed signature: {open} descents never closed (offset {offset})")]
    Unclosed { offset: usize, open: usize },
    #[error("malformed signature: {nodes} nodes do not fit the node id type")]
    TooLarge { nodes: usize },
}

impl SignatureError {
    /// Byte offset into the input at which the problem was detected.
    pub fn offset(&self) -> usize {
        match *self {
            SignatureError::IllegalByte { offset, .. }
            | SignatureError::AboveRoot { offset }
            | SignatureError::Unclosed { offset, .. } => offset,
            SignatureError::OddLength { len } => len,
            SignatureError::TooLarge { .. } => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("node {node} out of range for a tree of {n} nodes")]
    NodeOutOfRange { node: u64, n: usize },
    #[error("tour index {index} out of range for a tour of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

impl QueryError {
    pub(crate) fn node(node: NodeId, n: usize) -> Self {
        QueryError::NodeOutOfRange {
            node: node as u64,
            n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("structure needs {needed} bytes, over the memory budget of {budget} bytes")]
    CapacityExceeded { needed: u64, budget: u64 },
    #[error("structure needs {entries} entries, more than the node id type can address")]
    IndexOverflow { entries: u64 },
}
