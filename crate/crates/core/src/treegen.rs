//! Seeded random trees built directly as signatures by recursive subtree
//! splitting.
//!
//! A subtree of `m` nodes draws `x` from the unit interval, gives
//! `floor(x * m)` nodes to the left child subtree, one to its root and the
//! rest to the right child subtree. With `x` uniform this is exactly the
//! random binary search tree distribution. Skewed trees restrict `x` to
//! `(0, ratio / (1 + ratio)]` and flip a coin for which side gets the small
//! part, so at every split `min(L, R)` is at most about `ratio * max(L, R)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tree::TreeSignature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub seed: u64,
    /// Largest allowed ratio between the smaller and the larger child
    /// subtree. `1.0` leaves the split unconstrained.
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GenError {
    #[error("node count must be at least 1")]
    NoNodes,
    #[error("skew ratio {0} outside (0, 1]")]
    BadRatio(f64),
}

impl GenConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        GenConfig {
            n,
            seed,
            ratio: 1.0,
        }
    }

    pub fn skewed(n: usize, seed: u64, ratio: f64) -> Self {
        GenConfig { n, seed, ratio }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::NoNodes);
        }
        if !(self.ratio > 0.0 && self.ratio <= 1.0) {
            return Err(GenError::BadRatio(self.ratio));
        }
        Ok(())
    }

    pub fn is_skewed(&self) -> bool {
        self.ratio < 1.0
    }
}

/// One subtree split, as seen by [`generate_observed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Split {
    /// Subtree size being split.
    pub size: usize,
    /// `floor(x * size)` before the skew coin is applied.
    pub drawn: usize,
    pub left: usize,
    pub right: usize,
}

/// Generates the signature for `cfg`; skewed when `cfg.ratio < 1`.
pub fn generate(cfg: &GenConfig) -> Result<TreeSignature, GenError> {
    generate_observed(cfg, |_| {})
}

pub fn gen_split_tree(n: usize, seed: u64) -> Result<TreeSignature, GenError> {
    generate(&GenConfig::new(n, seed))
}

pub fn gen_skewed_tree(n: usize, seed: u64, ratio: f64) -> Result<TreeSignature, GenError> {
    generate(&GenConfig::skewed(n, seed, ratio))
}

/// [`generate`], reporting every split to `observe`.
pub fn generate_observed(
    cfg: &GenConfig,
    mut observe: impl FnMut(Split),
) -> Result<TreeSignature, GenError> {
    cfg.validate()?;
    let n = cfg.n;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let small_cap = cfg.ratio / (1.0 + cfg.ratio);

    // Every window starts as all ascents; only descents are written.
    let mut buf = vec![b'0'; 2 * (n - 1)];
    // (offset of the window, subtree size); the window is 2 * (size - 1) long.
    let mut stack = vec![(0usize, n)];
    while let Some((offset, size)) = stack.pop() {
        if size <= 1 {
            continue;
        }
        let x = if cfg.is_skewed() {
            (1.0 - rng.random::<f64>()) * small_cap
        } else {
            loop {
                let x: f64 = rng.random();
                if x > 0.0 {
                    break x;
                }
            }
        };
        let drawn = ((x * size as f64) as usize).min(size - 1);
        let left = if cfg.is_skewed() && rng.random::<bool>() {
            size - 1 - drawn
        } else {
            drawn
        };
        let right = size - 1 - left;
        observe(Split {
            size,
            drawn,
            left,
            right,
        });

        if right > 0 {
            let at = offset + 2 * left;
            buf[at] = b'1';
            stack.push((at + 1, right));
        }
        if left > 0 {
            buf[offset] = b'1';
            stack.push((offset + 1, left));
        }
    }
    Ok(TreeSignature::from_bytes_unchecked(buf))
}
