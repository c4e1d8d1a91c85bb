use crate::error::BuildError;
use crate::la::{impl_level_ancestor, to_index, Strategy, Tally};
use crate::tree::{Depth, NodeId, Tree, ID_BYTES};

/// Every answer precomputed: row `v` lists the ancestors of `v` by depth,
/// `row(v)[d] = LA(v, d)`. Rows live in one flat pool behind an offset array.
///
/// Space: `W * Σ(depth(v) + 1) + W * (n + 1)`.
pub struct TableLA<'t> {
    tree: &'t Tree,
    offsets: Vec<NodeId>,
    entries: Vec<NodeId>,
}

impl<'t> TableLA<'t> {
    pub fn predicted_bytes(tree: &Tree) -> u64 {
        let entries: u64 = tree.depths().iter().map(|&d| d as u64 + 1).sum();
        ID_BYTES * entries + ID_BYTES * (tree.len() as u64 + 1)
    }

    /// Fails with `CapacityExceeded` when the rows would not fit `budget`.
    pub fn build(tree: &'t Tree, budget: u64) -> Result<Self, BuildError> {
        let needed = Self::predicted_bytes(tree);
        if needed > budget {
            return Err(BuildError::CapacityExceeded { needed, budget });
        }
        let n = tree.len();
        let total: usize = tree.depths().iter().map(|&d| d as usize + 1).sum();
        to_index(total)?;

        let mut offsets = Vec::with_capacity(n + 1);
        let mut entries = Vec::with_capacity(total);
        offsets.push(0);
        entries.push(0);
        offsets.push(1);
        // Preorder: the parent's row is complete before any child's.
        for v in 1..n {
            let p = tree.parent_raw(v as NodeId) as usize;
            let row = offsets[p] as usize..offsets[p + 1] as usize;
            entries.extend_from_within(row);
            entries.push(v as NodeId);
            offsets.push(entries.len() as NodeId);
        }
        Ok(TableLA {
            tree,
            offsets,
            entries,
        })
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    pub fn row(&self, v: NodeId) -> &[NodeId] {
        &self.entries[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn query_with<T: Tally>(&self, v: NodeId, d: Depth, tally: &mut T) -> Option<NodeId> {
        if d > self.tree.depth(v) {
            return None;
        }
        tally.table();
        Some(self.entries[self.offsets[v as usize] as usize + d as usize])
    }

    pub fn space_bytes(&self) -> u64 {
        ID_BYTES * (self.entries.len() + self.offsets.len()) as u64
    }
}

impl_level_ancestor!(TableLA<'_>, Strategy::Table);
