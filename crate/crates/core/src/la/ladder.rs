use crate::error::BuildError;
use crate::la::{impl_level_ancestor, to_index, Strategy, Tally};
use crate::tree::{Depth, NodeId, Tree, ID_BYTES, NONE};

/// Longest-path decomposition into ladders, each extended rootward by up to
/// its own length.
///
/// Every node belongs to exactly one primary ladder. Ladders are stored top
/// first in one pool, extension included, so a node's position is relative
/// to its extended ladder. A node of height `h` finds an ancestor of height
/// at least `2h` (or the root) on its own extended ladder, which bounds a
/// query to `O(log n)` ladder hops.
///
/// Space: `W * Σ extended lengths + 2W * n + W * (ladders + 1) + W * ladders`
/// (pool, per-node ladder id and position, ladder offsets, original lengths).
pub struct LadderLA<'t> {
    tree: &'t Tree,
    pool: Vec<NodeId>,
    offsets: Vec<NodeId>,
    original_len: Vec<NodeId>,
    ladder_of: Vec<NodeId>,
    pub(crate) position: Vec<NodeId>,
}

impl<'t> LadderLA<'t> {
    pub fn build(tree: &'t Tree) -> Result<Self, BuildError> {
        let n = tree.len();
        let metrics = tree.metrics();
        let height = &metrics.height;

        // Longest-path child: maximum height, lowest id on ties.
        let mut next_on_path = vec![NONE; n];
        for v in 0..n {
            let mut best: Option<(Depth, NodeId)> = None;
            for c in tree.children(v as NodeId) {
                let h = height[c as usize];
                if best.is_none_or(|(bh, _)| h > bh) {
                    best = Some((h, c));
                }
            }
            if let Some((_, c)) = best {
                next_on_path[v] = c;
            }
        }

        let mut pool = Vec::with_capacity(2 * n);
        let mut offsets = vec![0 as NodeId];
        let mut original_len = Vec::new();
        let mut ladder_of = vec![NONE; n];
        let mut position = vec![NONE; n];
        let mut scratch = Vec::new();

        for top in 0..n {
            let p = tree.parent_raw(top as NodeId);
            if p != NONE && next_on_path[p as usize] == top as NodeId {
                continue;
            }
            let id = to_index(original_len.len())?;
            let len = height[top] as usize;
            let extension = len.min(tree.depth(top as NodeId) as usize);

            scratch.clear();
            let mut x = top as NodeId;
            for _ in 0..extension {
                x = tree.parent_raw(x);
                scratch.push(x);
            }
            pool.extend(scratch.iter().rev());

            let mut x = top as NodeId;
            for k in 0..len {
                ladder_of[x as usize] = id;
                position[x as usize] = to_index(extension + k)?;
                pool.push(x);
                x = next_on_path[x as usize];
            }
            debug_assert_eq!(x, NONE);
            original_len.push(len as NodeId);
            offsets.push(to_index(pool.len())?);
        }

        Ok(LadderLA {
            tree,
            pool,
            offsets,
            original_len,
            ladder_of,
            position,
        })
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    pub fn ladder_count(&self) -> usize {
        self.original_len.len()
    }

    /// Ladder `id` including its extension, top first.
    pub fn ladder(&self, id: usize) -> &[NodeId] {
        &self.pool[self.offsets[id] as usize..self.offsets[id + 1] as usize]
    }

    pub fn original_len(&self, id: usize) -> usize {
        self.original_len[id] as usize
    }

    /// The primary ladder of `v` and `v`'s index in its extended array.
    pub fn ladder_of(&self, v: NodeId) -> (usize, usize) {
        (
            self.ladder_of[v as usize] as usize,
            self.position[v as usize] as usize,
        )
    }

    pub fn extended_len_total(&self) -> usize {
        self.pool.len()
    }

    /// Ancestor of `x` at depth `d` read straight off `x`'s extended ladder,
    /// or `None` if the ladder does not reach that high. Requires
    /// `d <= depth(x)`.
    #[inline(always)]
    pub(crate) fn climb(&self, x: NodeId, d: Depth) -> Option<NodeId> {
        let up = (self.tree.depth(x) - d) as usize;
        let pos = self.position[x as usize] as usize;
        if up > pos {
            return None;
        }
        let base = self.offsets[self.ladder_of[x as usize] as usize] as usize;
        Some(self.pool[base + pos - up])
    }

    #[inline]
    pub fn query_with<T: Tally>(&self, v: NodeId, d: Depth, tally: &mut T) -> Option<NodeId> {
        let mut depth = self.tree.depth(v);
        if d > depth {
            return None;
        }
        let mut v = v;
        loop {
            tally.ladder();
            let base = self.offsets[self.ladder_of[v as usize] as usize] as usize;
            let top = self.pool[base];
            let top_depth = self.tree.depth(top);
            if top_depth <= d {
                let pos = self.position[v as usize] as usize;
                return Some(self.pool[base + pos - (depth - d) as usize]);
            }
            v = self.tree.parent_raw(top);
            depth = top_depth - 1;
        }
    }

    pub fn space_bytes(&self) -> u64 {
        ID_BYTES
            * (self.pool.len()
                + self.ladder_of.len()
                + self.position.len()
                + self.offsets.len()
                + self.original_len.len()) as u64
    }
}

impl_level_ancestor!(LadderLA<'_>, Strategy::Ladder);
