//! Static level ancestor queries: `LA(v, d)` returns the ancestor of `v` at
//! depth `d`.
//!
//! Six strategies share the [`LevelAncestor`] interface:
//!
//! | strategy | preprocessing | query |
//! |---|---|---|
//! | [`TableLA`] | O(n²) | O(1) |
//! | [`JumpPointersLA`] | O(n log n) | O(log n) |
//! | [`LadderLA`] | O(n) | O(log n) |
//! | [`JumpLadderLA`] | O(n log n) | O(1) |
//! | [`MacroMicroLA`] | O(n) | O(1) |
//! | [`FindSmallerLA`] | O(n) | O(log n) worst case |
//!
//! Trees are read from Euler-traversal signatures (`1` descend, `0` ascend)
//! and stored as flat preorder arrays; see [`tree`]. Random trees come from
//! [`treegen`], and [`bench`] holds the verification and timing harness.

pub mod bench;
pub mod cli;
pub mod error;
pub mod find_smaller;
pub mod la;
pub mod macro_micro;
pub mod tree;
pub mod treegen;

pub use error::{BuildError, QueryError, SignatureError};
pub use find_smaller::FindSmallerLA;
pub use la::{
    HopCounters, JumpLadderLA, JumpPointersLA, LadderLA, LevelAncestor, Strategy, TableLA,
    DEFAULT_MEM_BUDGET,
};
pub use macro_micro::MacroMicroLA;
pub use tree::{naive_la, Depth, EulerTour, Metrics, NodeId, Tree, TreeSignature, TreeStats};
