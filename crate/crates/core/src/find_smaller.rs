//! Level ancestor through "find smaller" on the Euler depth sequence.
//!
//! `LA(v, d)` for `d < depth(v)` is the node at the first tour position after
//! `v`'s first visit whose depth is at most `d`; since depths move in steps
//! of one, that depth is exactly `d`.
//!
//! The sequence is cut into blocks of `b = max(4, ceil(log2(n) / 2))`
//! positions. Each distinct block shape (its run of +1/-1 steps) gets a table
//! answering "first offset at or after `p` whose value relative to the block
//! start is at most `t`". Across blocks, a pyramid of power-of-two aligned
//! window minima over the block minima finds the first later block that can
//! contain the answer. That search is logarithmic in the number of blocks in
//! the worst case; hop counters report its probes as jumps.

use std::collections::HashMap;

use crate::error::QueryError;
use crate::la::{impl_level_ancestor, Strategy, Tally};
use crate::tree::{Depth, EulerTour, NodeId, Tree, ID_BYTES};

const NO_ENTRY: u8 = u8::MAX;

pub struct FindSmallerLA<'t> {
    tree: &'t Tree,
    tour: EulerTour,
    block: usize,
    /// Per block, offset of its shape's table in `tables`.
    block_table: Vec<u32>,
    /// Per distinct shape: length in the high half, step bits in the low.
    shape_codes: Vec<u32>,
    /// `b * (2b + 1)` entries per shape, indexed `[p][t + b]`.
    tables: Vec<u8>,
    /// `minima[k][i]` is the minimum over blocks `i * 2^k .. (i + 1) * 2^k`.
    minima: Vec<Vec<Depth>>,
}

/// `max(4, ceil(log2(n) / 2))`.
pub fn tour_block_size(n: usize) -> usize {
    ((n as f64).log2() / 2.0).ceil().max(4.0) as usize
}

impl<'t> FindSmallerLA<'t> {
    pub fn build(tree: &'t Tree) -> Self {
        let tour = tree.euler_tour();
        let b = tour_block_size(tree.len());
        assert!(b <= 16, "block shapes are packed into 16 bits");
        let width = 2 * b + 1;

        let mut dict: HashMap<u32, u32> = HashMap::new();
        let mut shape_codes = Vec::new();
        let mut tables = Vec::new();
        let mut block_table = Vec::with_capacity(tour.len().div_ceil(b));
        let mut block_min = Vec::with_capacity(tour.len().div_ceil(b));
        let mut prefix = vec![0i64; b];

        for chunk in tour.values.chunks(b) {
            let start = chunk[0];
            let mut bits = 0u32;
            for w in chunk.windows(2) {
                bits = bits << 1 | (w[1] > w[0]) as u32;
            }
            let code = (chunk.len() as u32) << 16 | bits;
            let offset = *dict.entry(code).or_insert_with(|| {
                let offset = tables.len() as u32;
                for (q, &x) in chunk.iter().enumerate() {
                    prefix[q] = x as i64 - start as i64;
                }
                let mut table = vec![NO_ENTRY; b * width];
                for p in (0..chunk.len()).rev() {
                    for slot in 0..width {
                        let t = slot as i64 - b as i64;
                        table[p * width + slot] = if prefix[p] <= t {
                            p as u8
                        } else if p + 1 < chunk.len() {
                            table[(p + 1) * width + slot]
                        } else {
                            NO_ENTRY
                        };
                    }
                }
                tables.extend(table);
                shape_codes.push(code);
                offset
            });
            block_table.push(offset);
            block_min.push(*chunk.iter().min().expect("non-empty block"));
        }

        let mut minima = vec![block_min];
        while minima.last().map_or(0, Vec::len) > 1 {
            let below = minima.last().unwrap();
            let level = below.chunks(2).map(|w| *w.iter().min().unwrap()).collect();
            minima.push(level);
        }

        FindSmallerLA {
            tree,
            tour,
            block: b,
            block_table,
            shape_codes,
            tables,
            minima,
        }
    }

    pub fn tree(&self) -> &'t Tree {
        self.tree
    }

    pub fn tour(&self) -> &EulerTour {
        &self.tour
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    pub fn block_minima(&self) -> &[Depth] {
        &self.minima[0]
    }

    pub fn window_minima(&self) -> &[Vec<Depth>] {
        &self.minima
    }

    pub fn distinct_shapes(&self) -> usize {
        self.shape_codes.len()
    }

    /// Smallest tour index `i > u` with `E[i] <= d`, or `None`.
    pub fn find_smaller(&self, u: usize, d: i64) -> Result<Option<usize>, QueryError> {
        if u >= self.tour.len() {
            return Err(QueryError::IndexOutOfRange {
                index: u,
                len: self.tour.len(),
            });
        }
        Ok(self.find_from(u, d, &mut ()))
    }

    pub fn find_smaller_counted<T: Tally>(
        &self,
        u: usize,
        d: i64,
        tally: &mut T,
    ) -> Result<Option<usize>, QueryError> {
        if u >= self.tour.len() {
            return Err(QueryError::IndexOutOfRange {
                index: u,
                len: self.tour.len(),
            });
        }
        Ok(self.find_from(u, d, tally))
    }

    #[inline]
    fn probe(&self, block: usize, p: usize, d: i64) -> Option<usize> {
        let b = self.block as i64;
        let start = self.tour.values[block * self.block] as i64;
        let t = (d - start).clamp(-b, b);
        let at = self.block_table[block] as usize + p * (2 * self.block + 1) + (t + b) as usize;
        match self.tables[at] {
            NO_ENTRY => None,
            q => Some(q as usize),
        }
    }

    #[inline]
    fn find_from<T: Tally>(&self, u: usize, d: i64, tally: &mut T) -> Option<usize> {
        let next = u + 1;
        if next >= self.tour.len() {
            return None;
        }
        let b = self.block;
        let block = next / b;
        tally.table();
        if let Some(q) = self.probe(block, next % b, d) {
            return Some(block * b + q);
        }
        let j = self.first_block_at_most(block + 1, d, tally)?;
        tally.table();
        let q = self.probe(j, 0, d).expect("block minimum is at most d");
        Some(j * b + q)
    }

    /// First block `j >= from` whose minimum is at most `d`.
    #[inline]
    fn first_block_at_most<T: Tally>(&self, from: usize, d: i64, tally: &mut T) -> Option<usize> {
        let blocks = self.minima[0].len();
        let levels = self.minima.len();
        let mut j = from;
        let mut k = 0;
        // Grow aligned windows starting at j until one qualifies.
        loop {
            if j >= blocks {
                return None;
            }
            while k + 1 < levels && (j >> k) & 1 == 0 {
                k += 1;
            }
            tally.jump();
            if self.minima[k][j >> k] as i64 <= d {
                break;
            }
            j += 1 << k;
        }
        // Narrow down to the leftmost qualifying block.
        while k > 0 {
            k -= 1;
            tally.jump();
            if self.minima[k][j >> k] as i64 > d {
                j += 1 << k;
            }
        }
        Some(j)
    }

    #[inline]
    pub fn query_with<T: Tally>(&self, v: NodeId, d: Depth, tally: &mut T) -> Option<NodeId> {
        let depth = self.tree.depth(v);
        if d >= depth {
            return (d == depth).then_some(v);
        }
        let u = self
            .find_from(self.tour.first_pos[v as usize] as usize, d as i64, tally)
            .expect("the root closes the tour at depth 0");
        debug_assert_eq!(self.tour.values[u], d);
        Some(self.tour.tour_node[u])
    }

    /// `4 * (2n - 1)` depth values, `W * (2n - 1)` tour nodes, `W * n` first
    /// positions, 4 bytes per block, per distinct shape a 4-byte code and
    /// `b * (2b + 1)` table bytes, and 4 bytes per window minimum.
    pub fn space_bytes(&self) -> u64 {
        let windows: usize = self.minima.iter().map(Vec::len).sum();
        4 * self.tour.values.len() as u64
            + ID_BYTES * (self.tour.tour_node.len() + self.tour.first_pos.len()) as u64
            + 4 * self.block_table.len() as u64
            + 4 * self.shape_codes.len() as u64
            + self.tables.len() as u64
            + 4 * windows as u64
    }
}

impl_level_ancestor!(FindSmallerLA<'_>, Strategy::FindSmaller);
