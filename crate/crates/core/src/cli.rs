//! The `la` command line: generate, inspect, verify, benchmark and query.
//!
//! Exit codes: 0 on success, 1 when verification finds a mismatch, 2 on
//! usage or input errors.

use std::io::{self, BufRead, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{self, BenchConfig, BenchTree, VerifyError};
use crate::la::{Strategy, DEFAULT_MEM_BUDGET};
use crate::tree::{Depth, NodeId, Tree, TreeSignature};
use crate::treegen::{self, GenConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "la", version, about = "Static level ancestor structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random split tree and write it as a signature file.
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Maximum ratio between the smaller and larger child subtree
        /// (1 = unconstrained random tree).
        #[arg(long, default_value_t = 1.0)]
        ratio: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print node count, tree depth and average node depth.
    Stats {
        #[arg(long)]
        tree: PathBuf,
        /// Print a CSV header and row instead of key: value lines.
        #[arg(long)]
        csv: bool,
    },
    /// Check strategies against the parent-walking oracle.
    Verify {
        #[arg(long)]
        tree: PathBuf,
        #[command(flatten)]
        strategies: StrategyArgs,
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Time preprocessing and queries, report analytic space.
    Bench {
        /// Signature files to benchmark.
        #[arg(long, num_args = 1.., required_unless_present = "nodes")]
        trees: Vec<PathBuf>,
        /// Generate trees of these sizes instead (comma separated).
        #[arg(long, value_delimiter = ',', conflicts_with = "trees")]
        nodes: Vec<usize>,
        /// Generated trees per size, with seeds 1..=K.
        #[arg(long, default_value_t = 10)]
        tree_seeds: u64,
        /// Skew ratio of generated trees.
        #[arg(long, default_value_t = 1.0)]
        ratio: f64,
        #[command(flatten)]
        strategies: StrategyArgs,
        /// Queries per tree: v uniform over nodes, d uniform over 0..=depth(v).
        #[arg(long, default_value_t = 10_000_000)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// Also run an instrumented pass and report hop averages.
        #[arg(long)]
        hops: bool,
        /// Measure peak resident memory (Linux only).
        #[arg(long)]
        rss: bool,
        /// CSV output path; standard output when omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Answer "v d" pairs from standard input, one answer per line.
    Query {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        strategy: Strategy,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Args)]
pub struct StrategyArgs {
    /// Comma-separated: table, jump, ladder, jumpladder, macromicro,
    /// findsmaller, or all.
    #[arg(long, default_value = "all", value_parser = parse_strategies)]
    pub strategies: StrategyList,
}

/// A parsed `--strategies` value. A newtype so clap treats the whole list as
/// one argument value.
#[derive(Debug, Clone)]
pub struct StrategyList(pub Vec<Strategy>);

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Per-structure memory budget in bytes (K, M, G suffixes are binary).
    #[arg(long, env = "LA_MEM_BUDGET", value_parser = parse_bytes, default_value_t = DEFAULT_MEM_BUDGET)]
    pub mem_budget: u64,
}

fn parse_strategies(s: &str) -> Result<StrategyList, String> {
    Strategy::parse_list(s)
        .map(StrategyList)
        .map_err(|e| e.to_string())
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, shift) = match s.char_indices().last() {
        Some((i, 'K' | 'k')) => (&s[..i], 10),
        Some((i, 'M' | 'm')) => (&s[..i], 20),
        Some((i, 'G' | 'g')) => (&s[..i], 30),
        _ => (s, 0),
    };
    let value: u64 = digits
        .parse()
        .map_err(|_| format!("invalid byte count {s:?}"))?;
    value
        .checked_mul(1 << shift)
        .ok_or_else(|| format!("byte count {s:?} overflows"))
}

/// Runs the CLI on `args` (program name first). I/O goes through the given
/// streams so tests can drive it.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn load_tree(path: &Path) -> Result<Tree, Failure> {
    let sig = TreeSignature::read_file(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        .map_err(|e| {
            Failure::usage(format!(
                "{}: at byte offset {}: {e}",
                path.display(),
                e.offset()
            ))
        })?;
    Ok(sig.to_tree())
}

fn dispatch(
    command: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Gen {
            nodes,
            seed,
            ratio,
            out,
        } => {
            let sig = treegen::generate(&GenConfig::skewed(nodes, seed, ratio))
                .map_err(|e| Failure::usage(e.to_string()))?;
            sig.write_file(&out)
                .map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;
            Ok(EXIT_OK)
        }
        Command::Stats { tree, csv } => {
            let stats = load_tree(&tree)?.stats();
            if csv {
                writeln!(stdout, "n,tree_depth,avg_node_depth")?;
                writeln!(
                    stdout,
                    "{},{},{}",
                    stats.n, stats.tree_depth, stats.avg_node_depth
                )?;
            } else {
                writeln!(stdout, "n: {}", stats.n)?;
                writeln!(stdout, "tree_depth: {}", stats.tree_depth)?;
                writeln!(stdout, "avg_node_depth: {:.4}", stats.avg_node_depth)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            tree,
            strategies,
            queries,
            seed,
            budget,
        } => {
            let t = load_tree(&tree)?;
            match bench::verify(
                &t,
                &strategies.strategies.0,
                queries,
                seed,
                budget.mem_budget,
            ) {
                Ok(report) => {
                    writeln!(
                        stdout,
                        "ok: {} strategies, {} comparisons",
                        report.strategies, report.comparisons
                    )?;
                    Ok(EXIT_OK)
                }
                Err(VerifyError::Mismatch(m)) => {
                    writeln!(stdout, "FAIL: {m}")?;
                    Ok(EXIT_MISMATCH)
                }
                Err(e @ VerifyError::Build { .. }) => Err(Failure::usage(e.to_string())),
            }
        }
        Command::Bench {
            trees,
            nodes,
            tree_seeds,
            ratio,
            strategies,
            queries,
            seed,
            reps,
            hops,
            rss,
            csv,
            budget,
        } => {
            let mut inputs = Vec::new();
            for path in &trees {
                inputs.push(BenchTree {
                    tree: load_tree(path)?,
                    seed: None,
                    ratio: None,
                });
            }
            for &n in &nodes {
                for s in 1..=tree_seeds {
                    let sig = treegen::generate(&GenConfig::skewed(n, s, ratio))
                        .map_err(|e| Failure::usage(e.to_string()))?;
                    inputs.push(BenchTree {
                        tree: sig.to_tree(),
                        seed: Some(s),
                        ratio: Some(ratio),
                    });
                }
            }
            let cfg = BenchConfig {
                strategies: strategies.strategies.0,
                queries,
                seed,
                repetitions: reps,
                budget: budget.mem_budget,
                count_hops: hops,
                measure_rss: rss,
            };
            let rows = bench::run_benchmark(&inputs, &cfg);
            for row in rows.iter().filter(|r| r.skipped.is_some()) {
                writeln!(
                    stderr,
                    "skipped {} on n={}: {}",
                    row.strategy,
                    row.n,
                    row.skipped.as_ref().unwrap()
                )?;
            }
            let written = match csv {
                Some(path) => std::fs::File::create(&path)
                    .map_err(csv::Error::from)
                    .and_then(|f| bench::write_csv(f, &rows)),
                None => bench::write_csv(&mut *stdout, &rows),
            };
            written.map_err(|e| Failure::usage(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::Query {
            tree,
            strategy,
            budget,
        } => {
            let t = load_tree(&tree)?;
            let la = strategy
                .build(&t, budget.mem_budget)
                .map_err(|e| Failure::usage(e.to_string()))?;
            let mut out = BufWriter::new(stdout);
            let mut pending: Option<NodeId> = None;
            let reader = io::BufReader::new(stdin);
            for line in reader.lines() {
                for token in line?.split_whitespace() {
                    let value: i64 = token
                        .parse()
                        .map_err(|_| Failure::usage(format!("not an integer: {token:?}")))?;
                    let Some(v) = pending.take() else {
                        let v = NodeId::try_from(value)
                            .ok()
                            .filter(|&v| (v as usize) < t.len())
                            .ok_or_else(|| {
                                Failure::usage(format!(
                                    "node {value} out of range (n = {})",
                                    t.len()
                                ))
                            })?;
                        pending = Some(v);
                        continue;
                    };
                    let answer = match Depth::try_from(value) {
                        Ok(d) => la.query(v, d).expect("node checked"),
                        Err(_) => None,
                    };
                    match answer {
                        Some(a) => writeln!(out, "{a}")?,
                        None => writeln!(out, "UNDEFINED")?,
                    }
                }
            }
            out.flush()?;
            if let Some(v) = pending {
                return Err(Failure::usage(format!("node {v} has no depth")));
            }
            Ok(EXIT_OK)
        }
    }
}
