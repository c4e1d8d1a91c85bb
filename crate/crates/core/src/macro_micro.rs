//! The macro-micro-tree strategy: linear preprocessing, constant-time queries.
//!
//! Nodes whose subtree weight exceeds `B = max(1, ceil(log2(n) / 4))` form the
//! macrotree. Macro nodes with no macro children are jump nodes and are the
//! only nodes that carry jump pointers. Everything below them splits into
//! microtrees of at most `B` nodes, whose answers come from precomputed
//! tables shared by every microtree of the same shape. Ladders cover the
//! whole tree.
//!
//! A query either reads one microtree table entry, or (for a macro start, or
//! a target above the microtree) takes one jump from a jump node below the
//! start and finishes with one ladder read.

use std::collections::HashMap;

use crate::error::BuildError;
use crate::la::{floor_log2, impl_level_ancestor, to_index, LadderLA, Strategy, Tally};
use crate::tree::{Depth, NodeId, Tree, ID_BYTES, NONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum NodeClass {
    Macro,
    /// Macro node without macro children.
    Jump,
    MicroRoot,
    Micro,
}

impl NodeClass {
    pub fn is_micro(self) -> bool {
        matches!(self, NodeClass::MicroRoot | NodeClass::Micro)
    }
}

/// Microtree shape: node count plus the `2(w - 1)` signature bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShapeCode(u32);

impl ShapeCode {
    fn new(size: usize, bits: u32) -> Self {
        debug_assert!(size < 1 << 15 && bits < 1 << 16);
        ShapeCode((size as u32) << 16 | bits)
    }

    pub fn size(self) -> usize {
        (self.0 >> 16) as usize
    }

    /// Signature of the shape, `'1'` for a descent.
    pub fn signature(self) -> String {
        let len = 2 * (self.size() - 1);
        (0..len)
            .rev()
            .map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Structural facts checked at build time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MacroMicroStats {
    pub block: usize,
    pub jump_nodes: usize,
    pub jump_pointers: usize,
    pub micro_trees: usize,
    pub max_micro_size: usize,
    pub distinct_shapes: usize,
}

const NO_ENTRY: u8 = u8::MAX;

pub struct MacroMicroLA<'t> {
    tree: &'t Tree,
    block: usize,
    class: Vec<NodeClass>,
    micro_root: Vec<NodeId>,
    /// Macro nodes: index of their jump descendant in `jump_nodes`.
    /// Micro nodes: offset of their microtree's table in `shape_tables`.
    link: Vec<NodeId>,
    jump_nodes: Vec<NodeId>,
    jump_offsets: Vec<NodeId>,
    jump_pointers: Vec<NodeId>,
    ladders: LadderLA<'t>,
    shape_codes: Vec<ShapeCode>,
    /// `block * block` entries per shape: `[local id][local depth]`, local
    /// ids relative to the microtree root.
    shape_tables: Vec<u8>,
    stats: MacroMicroStats,
}

/// `max(1, ceil(log2(n) / 4))`.
pub fn micro_block_size(n: usize) -> usize {
    ((n as f64).log2() / 4.0).ceil().max(1.0) as usize
}

impl<'t> MacroMicroLA<'t> {
    pub fn build(tree: &'t Tree) -> Result<Self, BuildError> {
        let n = tree.len();
        let block = micro_block_size(n);
        assert!(block <= 8, "microtree tables use byte-sized local ids");
        let metrics = tree.metrics();
        let weight = &metrics.weight;
        let is_macro = |v: usize| weight[v] as usize > block;

        let mut class = vec![NodeClass::Micro; n];
        let mut micro_root = vec![NONE; n];
        let mut jump_nodes = Vec::new();
        let mut micro_roots = Vec::new();
        for v in 0..n {
            if is_macro(v) {
                let has_macro_child = tree.children(v as NodeId).any(|c| is_macro(c as usize));
                class[v] = if has_macro_child {
                    NodeClass::Macro
                } else {
                    jump_nodes.push(v as NodeId);
                    NodeClass::Jump
                };
            } else {
                let p = tree.parent_raw(v as NodeId);
                if p == NONE || is_macro(p as usize) {
                    class[v] = NodeClass::MicroRoot;
                    micro_root[v] = v as NodeId;
                    micro_roots.push(v as NodeId);
                } else {
                    micro_root[v] = micro_root[p as usize];
                }
            }
        }

        let mut link = vec![NONE; n];
        for (k, &j) in jump_nodes.iter().enumerate() {
            link[j as usize] = to_index(k)?;
        }
        // A plain macro node borrows the jump node of its lowest-id macro child.
        for v in (0..n).rev() {
            if class[v] == NodeClass::Macro {
                let c = tree
                    .children(v as NodeId)
                    .find(|&c| is_macro(c as usize))
                    .expect("macro node has a macro child");
                link[v] = link[c as usize];
            }
        }

        // Jump pointers, read off the current root path during a preorder walk.
        let mut jump_offsets = Vec::with_capacity(jump_nodes.len() + 1);
        let mut jump_pointers = Vec::new();
        jump_offsets.push(0);
        let mut root_path: Vec<NodeId> = Vec::new();
        let mut next_jump = 0;
        for v in 0..n {
            let depth = tree.depth(v as NodeId) as usize;
            root_path.truncate(depth);
            root_path.push(v as NodeId);
            if next_jump < jump_nodes.len() && jump_nodes[next_jump] == v as NodeId {
                if depth > 0 {
                    for i in 0..=floor_log2(depth as u32) {
                        jump_pointers.push(root_path[depth - (1 << i)]);
                    }
                }
                jump_offsets.push(to_index(jump_pointers.len())?);
                next_jump += 1;
            }
        }

        // Shape dictionary and tables.
        let mut dict: HashMap<ShapeCode, NodeId> = HashMap::new();
        let mut shape_codes = Vec::new();
        let mut shape_tables = Vec::new();
        let mut max_micro_size = 0;
        for &r in &micro_roots {
            let size = weight[r as usize] as usize;
            max_micro_size = max_micro_size.max(size);
            let code = shape_code(tree, r, size);
            let offset = match dict.get(&code) {
                Some(&off) => off,
                None => {
                    let off = to_index(shape_tables.len())?;
                    shape_tables.extend(micro_table(tree, r, size, block));
                    shape_codes.push(code);
                    dict.insert(code, off);
                    off
                }
            };
            for v in r..r + size as NodeId {
                link[v as usize] = offset;
            }
        }

        let stats = MacroMicroStats {
            block,
            jump_nodes: jump_nodes.len(),
            jump_pointers: jump_pointers.len(),
            micro_trees: micro_roots.len(),
            max_micro_size,
            distinct_shapes: shape_codes.len(),
        };
        assert!(stats.max_micro_size <= block, "{stats:?}");
        assert!(stats.jump_nodes <= n / (block + 1), "{stats:?}");
        assert!(
            stats.distinct_shapes <= stats.micro_trees.min(1 << (2 * block)),
            "{stats:?}"
        );
        assert!(stats.jump_pointers <= stats.jump_nodes * (floor_log2(n as u32) as usize + 1));

        Ok(MacroMicroLA {
            tree,
            block,
            class,
            micro_root,
            link,
            jump_nodes,
            jump_offsets,
            jump_pointers,
            ladders: LadderLA::build(tree)?,
            shape_codes,
            shape_tables,
            stats,
        })
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    pub fn stats(&self) -> MacroMicroStats {
        self.stats
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn class(&self, v: NodeId) -> NodeClass {
        self.class[v as usize]
    }

    pub fn micro_root(&self, v: NodeId) -> Option<NodeId> {
        self.class[v as usize]
            .is_micro()
            .then(|| self.micro_root[v as usize])
    }

    /// A jump node in the subtree of macro node `v` (`v` itself if it is one).
    pub fn jump_desc(&self, v: NodeId) -> Option<NodeId> {
        (!self.class[v as usize].is_micro())
            .then(|| self.jump_nodes[self.link[v as usize] as usize])
    }

    pub fn jump_pointers(&self, jump_node: NodeId) -> Option<&[NodeId]> {
        let k = self.jump_nodes.binary_search(&jump_node).ok()?;
        Some(&self.jump_pointers[self.jump_offsets[k] as usize..self.jump_offsets[k + 1] as usize])
    }

    pub fn ladders(&self) -> &LadderLA<'t> {
        &self.ladders
    }

    /// Shape of the microtree containing micro node `v`.
    pub fn shape_of(&self, v: NodeId) -> Option<ShapeCode> {
        self.class[v as usize]
            .is_micro()
            .then(|| self.shape_codes[self.link[v as usize] as usize / (self.block * self.block)])
    }

    /// Ancestor table of a shape: row `l` lists local ids by local depth.
    pub fn shape_table(&self, code: ShapeCode) -> Option<Vec<Vec<u8>>> {
        let k = self.shape_codes.iter().position(|&c| c == code)?;
        let b = self.block;
        let table = &self.shape_tables[k * b * b..(k + 1) * b * b];
        Some(
            (0..code.size())
                .map(|l| {
                    table[l * b..(l + 1) * b]
                        .iter()
                        .copied()
                        .take_while(|&e| e != NO_ENTRY)
                        .collect()
                })
                .collect(),
        )
    }

    #[inline]
    pub fn query_with<T: Tally>(&self, v: NodeId, d: Depth, tally: &mut T) -> Option<NodeId> {
        let depth = self.tree.depth(v);
        if d >= depth {
            return (d == depth).then_some(v);
        }
        let mut start = v;
        if self.class[v as usize].is_micro() {
            let r = self.micro_root[v as usize];
            let root_depth = self.tree.depth(r);
            if d >= root_depth {
                tally.table();
                let at = self.link[v as usize] as usize
                    + (v - r) as usize * self.block
                    + (d - root_depth) as usize;
                return Some(r + self.shape_tables[at] as NodeId);
            }
            start = self.tree.parent_raw(r);
            if d == root_depth - 1 {
                return Some(start);
            }
        }
        // start is macro and strictly deeper than d; so is its jump node.
        let k = self.link[start as usize] as usize;
        let j = self.jump_nodes[k];
        let i = floor_log2(self.tree.depth(j) - d);
        let x = self.jump_pointers[self.jump_offsets[k] as usize + i as usize];
        tally.jump();
        tally.ladder();
        Some(
            self.ladders
                .climb(x, d)
                .expect("extended ladder covers the residual gap"),
        )
    }

    /// `n` class bytes, `W * n` each for micro roots and links, `W` per jump
    /// node plus `W * (jumps + 1)` offsets and `W` per jump pointer, the
    /// ladders, and per distinct shape a 4-byte code plus `B * B` table bytes.
    pub fn space_bytes(&self) -> u64 {
        let n = self.class.len() as u64;
        n + ID_BYTES * 2 * n
            + ID_BYTES
                * (self.jump_nodes.len() + self.jump_offsets.len() + self.jump_pointers.len())
                    as u64
            + self.ladders.space_bytes()
            + 4 * self.shape_codes.len() as u64
            + self.shape_tables.len() as u64
    }
}

impl_level_ancestor!(MacroMicroLA<'_>, Strategy::MacroMicro);

fn shape_code(tree: &Tree, r: NodeId, size: usize) -> ShapeCode {
    let base = tree.depth(r);
    let mut bits = 0u32;
    let mut prev_depth = 0;
    let mut push = |bit: u32| bits = bits << 1 | bit;
    for v in r + 1..r + size as NodeId {
        let d = tree.depth(v) - base;
        for _ in 0..prev_depth + 1 - d {
            push(0);
        }
        push(1);
        prev_depth = d;
    }
    for _ in 0..prev_depth {
        push(0);
    }
    ShapeCode::new(size, bits)
}

/// Table algorithm restricted to one microtree, in local coordinates.
fn micro_table(tree: &Tree, r: NodeId, size: usize, block: usize) -> Vec<u8> {
    let mut table = vec![NO_ENTRY; block * block];
    let base = tree.depth(r) as usize;
    for local in 0..size {
        let v = r + local as NodeId;
        let ld = tree.depth(v) as usize - base;
        if local > 0 {
            let p = (tree.parent_raw(v) - r) as usize;
            table.copy_within(p * block..p * block + ld, local * block);
        }
        table[local * block + ld] = local as u8;
    }
    table
}
