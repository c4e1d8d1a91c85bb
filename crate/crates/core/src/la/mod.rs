//! Level ancestor strategies behind the common [`LevelAncestor`] interface.

use std::fmt;
use std::str::FromStr;

use crate::error::{BuildError, QueryError};
use crate::find_smaller::FindSmallerLA;
use crate::macro_micro::MacroMicroLA;
use crate::tree::{Depth, NodeId, Tree, ID_BYTES};

mod jump;
mod jump_ladder;
mod ladder;
mod table;

pub use jump::JumpPointersLA;
pub use jump_ladder::JumpLadderLA;
pub use ladder::LadderLA;
pub use table::TableLA;

/// Default ceiling on the bytes a single structure may occupy: 8 GiB.
pub const DEFAULT_MEM_BUDGET: u64 = 8 << 30;

/// Receives hop events during a query. The unit implementation compiles
/// away, so uninstrumented queries pay nothing.
pub trait Tally {
    #[inline(always)]
    fn jump(&mut self) {}
    #[inline(always)]
    fn ladder(&mut self) {}
    #[inline(always)]
    fn table(&mut self) {}
}

impl Tally for () {}

/// Cumulative hop counts.
///
/// Find-Smaller reports its block micro-table probes as `table_lookups` and
/// its window-minimum probes as `jumps`.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct HopCounters {
    pub jumps: u64,
    pub ladder_hops: u64,
    pub table_lookups: u64,
}

impl Tally for HopCounters {
    #[inline(always)]
    fn jump(&mut self) {
        self.jumps += 1;
    }
    #[inline(always)]
    fn ladder(&mut self) {
        self.ladder_hops += 1;
    }
    #[inline(always)]
    fn table(&mut self) {
        self.table_lookups += 1;
    }
}

impl std::ops::AddAssign for HopCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.jumps += rhs.jumps;
        self.ladder_hops += rhs.ladder_hops;
        self.table_lookups += rhs.table_lookups;
    }
}

/// A level ancestor structure: built once over a tree, then immutable.
///
/// `query(v, d)` returns the ancestor of `v` at depth `d`, or `None` when
/// `d > depth(v)`. Structures are `Sync`; hop counters live with the caller.
pub trait LevelAncestor: Sync {
    fn strategy(&self) -> Strategy;

    /// Node count of the underlying tree.
    fn node_count(&self) -> usize;

    fn query(&self, v: NodeId, d: Depth) -> Result<Option<NodeId>, QueryError>;

    fn query_counted(
        &self,
        v: NodeId,
        d: Depth,
        hops: &mut HopCounters,
    ) -> Result<Option<NodeId>, QueryError>;

    /// Bytes occupied by the auxiliary structure, from its published formula.
    /// The base tree (parent links, depths) is not charged.
    fn space_bytes(&self) -> u64;
}

/// Implements [`LevelAncestor`] on top of an inherent
/// `fn query_with<T: Tally>(&self, v, d, &mut T) -> Option<NodeId>` that may
/// assume `v` is in range.
macro_rules! impl_level_ancestor {
    ($ty:ty, $strategy:expr) => {
        impl $crate::la::LevelAncestor for $ty {
            fn strategy(&self) -> $crate::la::Strategy {
                $strategy
            }

            fn node_count(&self) -> usize {
                self.tree().len()
            }

            #[inline]
            fn query(
                &self,
                v: $crate::tree::NodeId,
                d: $crate::tree::Depth,
            ) -> Result<Option<$crate::tree::NodeId>, $crate::error::QueryError> {
                self.tree().check_node(v)?;
                Ok(self.query_with(v, d, &mut ()))
            }

            #[inline]
            fn query_counted(
                &self,
                v: $crate::tree::NodeId,
                d: $crate::tree::Depth,
                hops: &mut $crate::la::HopCounters,
            ) -> Result<Option<$crate::tree::NodeId>, $crate::error::QueryError> {
                self.tree().check_node(v)?;
                Ok(self.query_with(v, d, hops))
            }

            fn space_bytes(&self) -> u64 {
                self.space_bytes()
            }
        }
    };
}
pub(crate) use impl_level_ancestor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Table,
    Jump,
    Ladder,
    JumpLadder,
    MacroMicro,
    FindSmaller,
}

/// Nominal ⟨preprocessing, query⟩ bounds of a strategy. Documentation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyProfile {
    pub name: &'static str,
    pub preprocessing: &'static str,
    pub query: &'static str,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::Table,
        Strategy::Jump,
        Strategy::Ladder,
        Strategy::JumpLadder,
        Strategy::MacroMicro,
        Strategy::FindSmaller,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Table => "table",
            Strategy::Jump => "jump",
            Strategy::Ladder => "ladder",
            Strategy::JumpLadder => "jumpladder",
            Strategy::MacroMicro => "macromicro",
            Strategy::FindSmaller => "findsmaller",
        }
    }

    pub fn profile(self) -> StrategyProfile {
        let (preprocessing, query) = match self {
            Strategy::Table => ("O(n^2)", "O(1)"),
            Strategy::Jump => ("O(n log n)", "O(log n)"),
            Strategy::Ladder => ("O(n)", "O(log n)"),
            Strategy::JumpLadder => ("O(n log n)", "O(1)"),
            Strategy::MacroMicro => ("O(n)", "O(1)"),
            // Cross-block search is a logarithmic descent over block minima.
            Strategy::FindSmaller => ("O(n)", "O(log n) worst"),
        };
        StrategyProfile {
            name: self.name(),
            preprocessing,
            query,
        }
    }

    /// Parses a comma-separated list; `all` expands to every strategy.
    pub fn parse_list(list: &str) -> Result<Vec<Strategy>, UnknownStrategy> {
        let mut out: Vec<Strategy> = Vec::new();
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if token == "all" {
                out.extend(Strategy::ALL);
            } else {
                out.push(token.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(UnknownStrategy(list.to_string()));
        }
        Ok(out)
    }

    /// Upper bound on [`LevelAncestor::space_bytes`] before building; exact
    /// for `table` and `jump`.
    pub fn predicted_bytes(self, tree: &Tree) -> u64 {
        let n = tree.len() as u64;
        let w = ID_BYTES;
        match self {
            Strategy::Table => TableLA::predicted_bytes(tree),
            Strategy::Jump => JumpPointersLA::predicted_bytes(tree),
            // Extended ladders hold at most 2n entries, one per ladder leaf.
            Strategy::Ladder => ladder_bound(n),
            Strategy::JumpLadder => JumpPointersLA::predicted_bytes(tree) + ladder_bound(n),
            Strategy::MacroMicro => n * (1 + 2 * w) + ladder_bound(n) + n * 4 * w + (1 << 20),
            Strategy::FindSmaller => (2 * n) * (4 + w) + n * w + n * 12 + (1 << 20),
        }
    }

    pub fn build<'t>(
        self,
        tree: &'t Tree,
        budget: u64,
    ) -> Result<Box<dyn LevelAncestor + 't>, BuildError> {
        let predicted = self.predicted_bytes(tree);
        if predicted > budget {
            return Err(BuildError::CapacityExceeded {
                needed: predicted,
                budget,
            });
        }
        Ok(match self {
            Strategy::Table => Box::new(TableLA::build(tree, budget)?),
            Strategy::Jump => Box::new(JumpPointersLA::build(tree)?),
            Strategy::Ladder => Box::new(LadderLA::build(tree)?),
            Strategy::JumpLadder => Box::new(JumpLadderLA::build(tree)?),
            Strategy::MacroMicro => Box::new(MacroMicroLA::build(tree)?),
            Strategy::FindSmaller => Box::new(FindSmallerLA::build(tree)),
        })
    }
}

fn ladder_bound(n: u64) -> u64 {
    let w = ID_BYTES;
    w * 2 * n + 2 * w * n + w * (2 * n + 1)
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown strategy {0:?} (expected table, jump, ladder, jumpladder, macromicro, findsmaller or all)")]
pub struct UnknownStrategy(pub String);

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| UnknownStrategy(s.to_string()))
    }
}

/// `floor(log2 x)` for `x >= 1`.
#[inline(always)]
pub(crate) fn floor_log2(x: u32) -> u32 {
    debug_assert!(x > 0);
    31 - x.leading_zeros()
}

/// Converts a count to a stored node-id sized index, or reports overflow.
pub(crate) fn to_index(x: usize) -> Result<NodeId, BuildError> {
    NodeId::try_from(x)
        .ok()
        .filter(|&i| i != crate::tree::NONE)
        .ok_or(BuildError::IndexOverflow { entries: x as u64 })
}
