//! Query workloads, oracle verification, timing and space accounting.
//!
//! Queries pick `v` uniformly over the nodes and `d` uniformly over
//! `0..=depth(v)`, so every query has an answer and all depths are exercised.

use std::io;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::error::BuildError;
use crate::la::{HopCounters, LevelAncestor, Strategy};
use crate::tree::{naive_la, Depth, NodeId, Tree};

/// Header line of the benchmark CSV.
pub const CSV_HEADER: &str = "strategy,n,seed,ratio,build_ms,query_ms,queries,bytes,rss_bytes,checksum,avg_jumps,avg_ladder_hops,avg_table_lookups";

/// A reproducible stream of `count` answerable queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuerySet {
    pub seed: u64,
    pub count: usize,
}

impl QuerySet {
    pub fn new(count: usize, seed: u64) -> Self {
        QuerySet { seed, count }
    }

    pub fn iter<'t>(&self, tree: &'t Tree) -> QueryStream<'t> {
        QueryStream {
            tree,
            rng: ChaCha8Rng::seed_from_u64(self.seed),
            remaining: self.count,
        }
    }

    pub fn materialize(&self, tree: &Tree) -> Vec<(NodeId, Depth)> {
        self.iter(tree).collect()
    }
}

pub fn gen_queries(tree: &Tree, count: usize, seed: u64) -> QueryStream<'_> {
    QuerySet::new(count, seed).iter(tree)
}

pub struct QueryStream<'t> {
    tree: &'t Tree,
    rng: ChaCha8Rng,
    remaining: usize,
}

impl Iterator for QueryStream<'_> {
    type Item = (NodeId, Depth);

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let v = self.rng.random_range(0..self.tree.len()) as NodeId;
        let d = self.rng.random_range(0..=self.tree.depth(v));
        Some((v, d))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for QueryStream<'_> {}

/// Sum of answer ids modulo 2^64; `None` answers count as zero.
pub fn checksum<'a>(
    la: &dyn LevelAncestor,
    queries: impl IntoIterator<Item = &'a (NodeId, Depth)>,
) -> u64 {
    queries.into_iter().fold(0u64, |acc, &(v, d)| {
        let a = la.query(v, d).expect("query node in range");
        acc.wrapping_add(a.map_or(0, |a| a as u64))
    })
}

/// A strategy answer that disagrees with the parent-walking oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{strategy}: LA({v}, {d}) returned {got:?}, expected {want:?}")]
pub struct Mismatch {
    pub strategy: Strategy,
    pub v: NodeId,
    pub d: Depth,
    pub got: Option<NodeId>,
    pub want: Option<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{strategy}: {source}")]
    Build {
        strategy: Strategy,
        source: BuildError,
    },
    #[error(transparent)]
    Mismatch(#[from] Mismatch),
}

/// Checks every structure against [`naive_la`] on the given queries.
/// Returns the number of comparisons made.
pub fn verify_structures(
    tree: &Tree,
    structures: &[&dyn LevelAncestor],
    queries: impl IntoIterator<Item = (NodeId, Depth)>,
) -> Result<u64, Mismatch> {
    let mut checked = 0;
    for (v, d) in queries {
        let want = naive_la(tree, v, d).expect("query node in range");
        for la in structures {
            let got = la.query(v, d).expect("query node in range");
            if got != want {
                return Err(Mismatch {
                    strategy: la.strategy(),
                    v,
                    d,
                    got,
                    want,
                });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Every `(v, d)` with `d` from 0 through one past the tree depth.
pub fn exhaustive_queries(tree: &Tree) -> impl Iterator<Item = (NodeId, Depth)> + '_ {
    let max_depth = tree.stats().tree_depth;
    (0..tree.len() as NodeId).flat_map(move |v| (0..=max_depth + 1).map(move |d| (v, d)))
}

/// Random queries plus, for each sampled node, the edge cases `d = 0`,
/// `d = depth(v)` and the rejected `d = depth(v) + 1`.
pub fn adversarial_queries(
    tree: &Tree,
    count: usize,
    seed: u64,
) -> impl Iterator<Item = (NodeId, Depth)> + '_ {
    gen_queries(tree, count, seed).flat_map(move |(v, d)| {
        let dv = tree.depth(v);
        [(v, d), (v, 0), (v, dv), (v, dv + 1)]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyReport {
    pub strategies: usize,
    pub comparisons: u64,
}

/// Builds each strategy and checks it against the oracle. Small trees
/// (up to 256 nodes) are checked exhaustively, larger ones on `count` random
/// queries with their edge cases.
pub fn verify(
    tree: &Tree,
    strategies: &[Strategy],
    count: usize,
    seed: u64,
    budget: u64,
) -> Result<VerifyReport, VerifyError> {
    let built = strategies
        .iter()
        .map(|&s| {
            s.build(tree, budget).map_err(|source| VerifyError::Build {
                strategy: s,
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&dyn LevelAncestor> = built.iter().map(|b| b.as_ref()).collect();
    let comparisons = if tree.len() <= 256 {
        verify_structures(tree, &refs, exhaustive_queries(tree))?
    } else {
        verify_structures(tree, &refs, adversarial_queries(tree, count, seed))?
    };
    Ok(VerifyReport {
        strategies: refs.len(),
        comparisons,
    })
}

/// A tree under benchmark with the parameters that produced it, if known.
pub struct BenchTree {
    pub tree: Tree,
    pub seed: Option<u64>,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub strategies: Vec<Strategy>,
    pub queries: usize,
    pub seed: u64,
    pub repetitions: usize,
    pub budget: u64,
    /// Run an extra instrumented pass for the hop averages.
    pub count_hops: bool,
    pub measure_rss: bool,
}

/// min / median / mean over repetitions, in milliseconds.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub struct Timing {
    pub min: f64,
    pub median: f64,
    pub mean: f64,
}

impl Timing {
    pub fn from_samples(samples: &mut [f64]) -> Timing {
        if samples.is_empty() {
            return Timing::default();
        }
        samples.sort_by(f64::total_cmp);
        let len = samples.len();
        let median = if len % 2 == 1 {
            samples[len / 2]
        } else {
            (samples[len / 2 - 1] + samples[len / 2]) / 2.0
        };
        Timing {
            min: samples[0],
            median,
            mean: samples.iter().sum::<f64>() / len as f64,
        }
    }
}

/// One CSV row. Skipped strategies keep only their identifying columns.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub strategy: Strategy,
    pub n: usize,
    pub seed: Option<u64>,
    pub ratio: Option<f64>,
    pub build_ms: Option<f64>,
    pub query_ms: Option<f64>,
    pub queries: usize,
    pub bytes: Option<u64>,
    pub rss_bytes: Option<u64>,
    pub checksum: Option<u64>,
    pub avg_jumps: Option<f64>,
    pub avg_ladder_hops: Option<f64>,
    pub avg_table_lookups: Option<f64>,
    #[serde(skip)]
    pub build_timing: Timing,
    #[serde(skip)]
    pub query_timing: Timing,
    #[serde(skip)]
    pub skipped: Option<BuildError>,
}

impl Serialize for Strategy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Builds and times every strategy on every tree. Tree construction is not
/// timed. Strategies over budget are reported as skipped rows.
pub fn run_benchmark(trees: &[BenchTree], cfg: &BenchConfig) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for bt in trees {
        let tree = &bt.tree;
        let queries = QuerySet::new(cfg.queries, cfg.seed).materialize(tree);
        for &strategy in &cfg.strategies {
            let mut row = BenchRow {
                strategy,
                n: tree.len(),
                seed: bt.seed,
                ratio: bt.ratio,
                build_ms: None,
                query_ms: None,
                queries: queries.len(),
                bytes: None,
                rss_bytes: None,
                checksum: None,
                avg_jumps: None,
                avg_ladder_hops: None,
                avg_table_lookups: None,
                build_timing: Timing::default(),
                query_timing: Timing::default(),
                skipped: None,
            };
            let mut build_samples = Vec::new();
            let mut query_samples = Vec::new();
            for _ in 0..cfg.repetitions.max(1) {
                let rss_base = cfg.measure_rss.then(rss::reset_peak).flatten();
                let started = Instant::now();
                let la = match strategy.build(tree, cfg.budget) {
                    Ok(la) => la,
                    Err(e) => {
                        row.skipped = Some(e);
                        break;
                    }
                };
                build_samples.push(started.elapsed().as_secs_f64() * 1e3);

                let started = Instant::now();
                let sum = checksum(la.as_ref(), &queries);
                query_samples.push(started.elapsed().as_secs_f64() * 1e3);

                if let Some(base) = rss_base {
                    row.rss_bytes = rss::peak().map(|p| p.saturating_sub(base));
                }
                debug_assert!(row.checksum.is_none_or(|c| c == sum));
                row.checksum = Some(sum);
                row.bytes = Some(la.space_bytes());

                if cfg.count_hops && row.avg_jumps.is_none() {
                    let mut hops = HopCounters::default();
                    for &(v, d) in &queries {
                        la.query_counted(v, d, &mut hops)
                            .expect("query node in range");
                    }
                    let q = queries.len().max(1) as f64;
                    row.avg_jumps = Some(hops.jumps as f64 / q);
                    row.avg_ladder_hops = Some(hops.ladder_hops as f64 / q);
                    row.avg_table_lookups = Some(hops.table_lookups as f64 / q);
                }
            }
            if row.skipped.is_none() {
                row.build_timing = Timing::from_samples(&mut build_samples);
                row.query_timing = Timing::from_samples(&mut query_samples);
                row.build_ms = Some(row.build_timing.median);
                row.query_ms = Some(row.query_timing.median);
            }
            rows.push(row);
        }
    }
    rows
}

pub fn write_csv<W: io::Write>(out: W, rows: &[BenchRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Peak resident set size on Linux, via `/proc/self`.
mod rss {
    #[cfg(target_os = "linux")]
    fn status_field(name: &str) -> Option<u64> {
        let status = std::fs::read_to_string("/proc/self/status").ok()?;
        let line = status.lines().find(|l| l.starts_with(name))?;
        let kb: u64 = line[name.len()..]
            .trim()
            .trim_end_matches("kB")
            .trim()
            .parse()
            .ok()?;
        Some(kb * 1024)
    }

    /// Resets the peak to the current RSS and returns that baseline.
    #[cfg(target_os = "linux")]
    pub fn reset_peak() -> Option<u64> {
        std::fs::write("/proc/self/clear_refs", "5").ok()?;
        status_field("VmRSS:")
    }

    #[cfg(target_os = "linux")]
    pub fn peak() -> Option<u64> {
        status_field("VmHWM:")
    }

    #[cfg(not(target_os = "linux"))]
    pub fn reset_peak() -> Option<u64> {
        None
    }

    #[cfg(not(target_os = "linux"))]
    pub fn peak() -> Option<u64> {
        None
    }
}
