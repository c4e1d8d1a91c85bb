//! Flat, preorder-indexed rooted trees and their Euler-traversal signatures.
//!
//! Node ids are DFS preorder numbers with the root at 0, so the subtree of `v`
//! is exactly the id range `v..v + weight(v)` and `parent(v) < v`. Children are
//! kept in left-child/right-sibling form, which accepts any arity.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{QueryError, SignatureError};

#[cfg(not(feature = "wide-ids"))]
pub type NodeId = u32;
#[cfg(feature = "wide-ids")]
pub type NodeId = u64;

/// Depths, heights and weights.
pub type Depth = u32;

/// Sentinel for "no node" inside the flat arrays. Never returned by queries.
pub const NONE: NodeId = NodeId::MAX;

/// Width in bytes of a stored node id; every space formula is in terms of it.
pub const ID_BYTES: u64 = std::mem::size_of::<NodeId>() as u64;

/// Euler traversal of a rooted tree: `1` for each descent along an edge, `0`
/// for each ascent. An `n`-node tree has a signature of `2(n - 1)` symbols.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TreeSignature(Vec<u8>);

impl TreeSignature {
    /// Validates raw ASCII `'1'`/`'0'` bytes.
    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self, SignatureError> {
        validate(&bytes)?;
        Ok(TreeSignature(bytes))
    }

    /// Wraps bytes already known to be a balanced signature.
    pub(crate) fn from_bytes_unchecked(bytes: Vec<u8>) -> Self {
        debug_assert!(validate(&bytes).is_ok());
        TreeSignature(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // Only ASCII '0'/'1' ever get in.
        std::str::from_utf8(&self.0).expect("signature is ASCII")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nodes of the encoded tree.
    pub fn node_count(&self) -> usize {
        self.0.len() / 2 + 1
    }

    pub fn to_tree(&self) -> Tree {
        Tree::parse_bytes(&self.0).expect("validated signature")
    }

    /// Reads an `LA-SIG v1` file: one line of `1`/`0`, terminated by LF.
    pub fn read_file(path: impl AsRef<Path>) -> std::io::Result<Result<Self, SignatureError>> {
        let mut bytes = std::fs::read(path)?;
        if bytes.last() == Some(&b'\n') {
            bytes.pop();
        }
        Ok(Self::from_bytes(bytes))
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.extend_from_slice(&self.0);
        out.push(b'\n');
        std::fs::write(path, out)
    }
}

impl FromStr for TreeSignature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_bytes(s.as_bytes().to_vec())
    }
}

impl fmt::Display for TreeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for TreeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreeSignature({:?})", self.as_str())
    }
}

fn validate(bytes: &[u8]) -> Result<(), SignatureError> {
    let mut open = 0usize;
    for (offset, &byte) in bytes.iter().enumerate() {
        match byte {
            b'1' => open += 1,
            b'0' => {
                if open == 0 {
                    return Err(SignatureError::AboveRoot { offset });
                }
                open -= 1;
            }
            _ => return Err(SignatureError::IllegalByte { offset, byte }),
        }
    }
    finish(bytes.len(), open)
}

fn finish(len: usize, open: usize) -> Result<(), SignatureError> {
    if len % 2 == 1 {
        Err(SignatureError::OddLength { len })
    } else if open != 0 {
        Err(SignatureError::Unclosed { offset: len, open })
    } else if len / 2 + 1 >= NONE as usize {
        Err(SignatureError::TooLarge { nodes: len / 2 + 1 })
    } else {
        Ok(())
    }
}

/// A rooted ordered tree stored as flat per-node arrays in preorder.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    parent: Vec<NodeId>,
    first_child: Vec<NodeId>,
    next_sibling: Vec<NodeId>,
    depth: Vec<Depth>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.len())
            .field("signature", &self.signature().as_str())
            .finish()
    }
}

impl FromStr for Tree {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tree::parse_bytes(s.as_bytes())
    }
}

impl Tree {
    /// The one-node tree (empty signature).
    pub fn single() -> Tree {
        Tree {
            parent: vec![NONE],
            first_child: vec![NONE],
            next_sibling: vec![NONE],
            depth: vec![0],
        }
    }

    /// A path of `n >= 1` nodes hanging from the root.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1);
        let mut sig = vec![b'1'; n - 1];
        sig.resize(2 * (n - 1), b'0');
        Tree::parse_bytes(&sig).expect("path signature")
    }

    /// Builds the tree from an ASCII signature in a single pass.
    pub fn parse_bytes(bytes: &[u8]) -> Result<Tree, SignatureError> {
        let cap = bytes.len() / 2 + 1;
        let mut tree = Tree {
            parent: Vec::with_capacity(cap),
            first_child: Vec::with_capacity(cap),
            next_sibling: Vec::with_capacity(cap),
            depth: Vec::with_capacity(cap),
        };
        tree.parent.push(NONE);
        tree.first_child.push(NONE);
        tree.next_sibling.push(NONE);
        tree.depth.push(0);
        // Most recently attached child of every node, for sibling links.
        let mut last_child: Vec<NodeId> = Vec::with_capacity(cap);
        last_child.push(NONE);

        let mut cur = 0usize;
        for (offset, &byte) in bytes.iter().enumerate() {
            match byte {
                b'1' => {
                    let id = tree.parent.len();
                    if id >= NONE as usize {
                        return Err(SignatureError::TooLarge { nodes: id + 1 });
                    }
                    tree.parent.push(cur as NodeId);
                    tree.first_child.push(NONE);
                    tree.next_sibling.push(NONE);
                    tree.depth.push(tree.depth[cur] + 1);
                    last_child.push(NONE);
                    match last_child[cur] {
                        NONE => tree.first_child[cur] = id as NodeId,
                        prev => tree.next_sibling[prev as usize] = id as NodeId,
                    }
                    last_child[cur] = id as NodeId;
                    cur = id;
                }
                b'0' => {
                    if cur == 0 {
                        return Err(SignatureError::AboveRoot { offset });
                    }
                    cur = tree.parent[cur] as usize;
                }
                _ => return Err(SignatureError::IllegalByte { offset, byte }),
            }
        }
        finish(bytes.len(), tree.depth[cur] as usize)?;
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Always false: a tree has at least its root.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v as usize] {
            NONE => None,
            p => Some(p),
        }
    }

    /// Parent id, or [`NONE`] for the root.
    #[inline]
    pub fn parent_raw(&self, v: NodeId) -> NodeId {
        self.parent[v as usize]
    }

    #[inline]
    pub fn depth(&self, v: NodeId) -> Depth {
        self.depth[v as usize]
    }

    pub fn depths(&self) -> &[Depth] {
        &self.depth
    }

    pub fn parents(&self) -> &[NodeId] {
        &self.parent
    }

    pub fn first_child(&self, v: NodeId) -> Option<NodeId> {
        match self.first_child[v as usize] {
            NONE => None,
            c => Some(c),
        }
    }

    pub fn next_sibling(&self, v: NodeId) -> Option<NodeId> {
        match self.next_sibling[v as usize] {
            NONE => None,
            c => Some(c),
        }
    }

    pub fn children(&self, v: NodeId) -> Children<'_> {
        Children {
            tree: self,
            next: self.first_child[v as usize],
        }
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.first_child[v as usize] == NONE
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<(), QueryError> {
        if (v as usize) < self.len() {
            Ok(())
        } else {
            Err(QueryError::node(v, self.len()))
        }
    }

    /// Emits the Euler traversal: `1` on each descent, `0` on each ascent.
    pub fn signature(&self) -> TreeSignature {
        let n = self.len();
        let mut out = Vec::with_capacity(2 * (n - 1));
        for v in 1..n {
            // Climb from the previous preorder node up to v's parent.
            let up = self.depth[v - 1] + 1 - self.depth[v];
            out.extend(std::iter::repeat_n(b'0', up as usize));
            out.push(b'1');
        }
        out.extend(std::iter::repeat_n(b'0', self.depth[n - 1] as usize));
        TreeSignature::from_bytes_unchecked(out)
    }

    /// Heights and subtree weights in one reverse-preorder pass.
    pub fn metrics(&self) -> Metrics {
        let n = self.len();
        let mut height = vec![1 as Depth; n];
        let mut weight = vec![1 as Depth; n];
        for v in (1..n).rev() {
            let p = self.parent[v] as usize;
            weight[p] += weight[v];
            height[p] = height[p].max(height[v] + 1);
        }
        Metrics { height, weight }
    }

    pub fn euler_tour(&self) -> EulerTour {
        let n = self.len();
        let len = 2 * n - 1;
        let mut values = Vec::with_capacity(len);
        let mut tour_node = Vec::with_capacity(len);
        let mut first_pos = vec![0 as NodeId; n];
        values.push(0);
        tour_node.push(0);
        let climb = |from: usize, to: NodeId, values: &mut Vec<Depth>, tour: &mut Vec<NodeId>| {
            let mut x = from as NodeId;
            while x != to {
                x = self.parent[x as usize];
                values.push(self.depth[x as usize]);
                tour.push(x);
            }
        };
        for v in 1..n {
            climb(v - 1, self.parent[v], &mut values, &mut tour_node);
            first_pos[v] = values.len() as NodeId;
            values.push(self.depth[v]);
            tour_node.push(v as NodeId);
        }
        climb(n - 1, 0, &mut values, &mut tour_node);
        debug_assert_eq!(values.len(), len);
        EulerTour {
            values,
            tour_node,
            first_pos,
        }
    }

    pub fn stats(&self) -> TreeStats {
        let total: u64 = self.depth.iter().map(|&d| d as u64).sum();
        TreeStats {
            n: self.len(),
            tree_depth: self.depth.iter().copied().max().unwrap_or(0),
            avg_node_depth: total as f64 / self.len() as f64,
        }
    }
}

pub struct Children<'a> {
    tree: &'a Tree,
    next: NodeId,
}

impl Iterator for Children<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        match self.next {
            NONE => None,
            c => {
                self.next = self.tree.next_sibling[c as usize];
                Some(c)
            }
        }
    }
}

/// Per-node height (nodes on the longest downward path, leaves = 1) and
/// weight (subtree size including the node).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    pub height: Vec<Depth>,
    pub weight: Vec<Depth>,
}

/// Depth sequence of a DFS that re-lists a node after returning from each
/// child. Length `2n - 1`, consecutive values differ by exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTour {
    pub values: Vec<Depth>,
    pub tour_node: Vec<NodeId>,
    pub first_pos: Vec<NodeId>,
}

impl EulerTour {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeStats {
    pub n: usize,
    pub tree_depth: Depth,
    pub avg_node_depth: f64,
}

/// Level ancestor by walking parent links; the reference every strategy is
/// checked against. `None` when `d > depth(v)`.
pub fn naive_la(tree: &Tree, v: NodeId, d: Depth) -> Result<Option<NodeId>, QueryError> {
    tree.check_node(v)?;
    let dv = tree.depth(v);
    if d > dv {
        return Ok(None);
    }
    let mut x = v;
    for _ in 0..dv - d {
        x = tree.parent_raw(x);
    }
    Ok(Some(x))
}
