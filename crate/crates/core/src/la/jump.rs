use crate::error::BuildError;
use crate::la::{floor_log2, impl_level_ancestor, to_index, Strategy, Tally};
use crate::tree::{Depth, NodeId, Tree, ID_BYTES};

/// Binary lifting: node `v` at depth `k >= 1` keeps its ancestors at distances
/// `1, 2, 4, ..., 2^floor(log2 k)`. A query takes one jump per set bit of the
/// depth gap.
///
/// Space: `W * Σ_{depth(v) >= 1}(floor(log2 depth(v)) + 1) + W * (n + 1)`.
pub struct JumpPointersLA<'t> {
    tree: &'t Tree,
    offsets: Vec<NodeId>,
    pointers: Vec<NodeId>,
}

#[inline]
fn pointer_count(depth: Depth) -> usize {
    if depth == 0 {
        0
    } else {
        floor_log2(depth) as usize + 1
    }
}

impl<'t> JumpPointersLA<'t> {
    pub fn predicted_bytes(tree: &Tree) -> u64 {
        let pointers: u64 = tree.depths().iter().map(|&d| pointer_count(d) as u64).sum();
        ID_BYTES * (pointers + tree.len() as u64 + 1)
    }

    pub fn build(tree: &'t Tree) -> Result<Self, BuildError> {
        let n = tree.len();
        let total: usize = tree.depths().iter().map(|&d| pointer_count(d)).sum();
        to_index(total)?;

        let mut offsets = Vec::with_capacity(n + 1);
        let mut pointers: Vec<NodeId> = Vec::with_capacity(total);
        offsets.push(0);
        for v in 0..n {
            let count = pointer_count(tree.depths()[v]);
            if count > 0 {
                let mut up = tree.parent_raw(v as NodeId);
                pointers.push(up);
                for i in 1..count {
                    // Ancestors precede v in preorder, so their lists exist.
                    up = pointers[offsets[up as usize] as usize + i - 1];
                    pointers.push(up);
                }
            }
            offsets.push(pointers.len() as NodeId);
        }
        Ok(JumpPointersLA {
            tree,
            offsets,
            pointers,
        })
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    /// Ancestors of `v` at distances `1, 2, 4, ...`.
    pub fn pointers(&self, v: NodeId) -> &[NodeId] {
        &self.pointers[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }

    /// Ancestor of `v` at distance `2^i`; `i` must be within `v`'s list.
    #[inline(always)]
    pub(crate) fn jump(&self, v: NodeId, i: u32) -> NodeId {
        self.pointers[self.offsets[v as usize] as usize + i as usize]
    }

    #[inline]
    pub fn query_with<T: Tally>(&self, v: NodeId, d: Depth, tally: &mut T) -> Option<NodeId> {
        let mut depth = self.tree.depth(v);
        if d > depth {
            return None;
        }
        let mut v = v;
        while depth > d {
            let i = floor_log2(depth - d);
            v = self.jump(v, i);
            depth -= 1 << i;
            tally.jump();
        }
        Some(v)
    }

    pub fn space_bytes(&self) -> u64 {
        ID_BYTES * (self.pointers.len() + self.offsets.len()) as u64
    }
}

impl_level_ancestor!(JumpPointersLA<'_>, Strategy::Jump);
