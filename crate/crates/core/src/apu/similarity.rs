//! Thresholded feature-similarity graph.
//!
//! Similarity between nodes is `w_ij = 1 - (e_ij - m) / (M - m)` with
//! `e_ij` the squared feature distance and `m`, `M` its extremes over
//! distinct pairs. Only pairs above a quantile cutoff are kept, and the dense
//! `n × n` matrix is never built: rows are generated on the fly and only
//! the surviving entries are stored.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdOptions {
    /// Up to this many nodes the quantile is exact over all pairs.
    pub exact_limit: usize,
    /// Number of sampled pairs above `exact_limit`.
    pub sample_pairs: usize,
    pub rng_seed: u64,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        ThresholdOptions {
            exact_limit: 5000,
            sample_pairs: 10_000_000,
            rng_seed: 0x5eed,
        }
    }
}

/// Realized similarity cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityCutoff {
    pub quantile_level: f64,
    /// Pairs are kept iff `w_ij > cutoff_w`.
    pub cutoff_w: f64,
    /// The same cutoff on squared distances: kept iff `e_ij < cutoff_e`.
    pub cutoff_e: f64,
    pub min_e: f64,
    pub max_e: f64,
    /// False when the quantile was estimated from sampled pairs.
    pub exact: bool,
}

impl SimilarityCutoff {
    pub fn similarity(&self, e: f64) -> f64 {
        1.0 - (e - self.min_e) / (self.max_e - self.min_e)
    }
}

/// Type-7 (linear interpolation) quantile; reorders `values`.
pub fn quantile(values: &mut [f64], level: f64) -> f64 {
    assert!(!values.is_empty());
    let h = (values.len() - 1) as f64 * level;
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    let (_, &mut x_lo, upper) = values.select_nth_unstable_by(lo, f64::total_cmp);
    if frac == 0.0 || upper.is_empty() {
        return x_lo;
    }
    let x_hi = upper.iter().copied().fold(f64::INFINITY, f64::min);
    x_lo + frac * (x_hi - x_lo)
}

/// Extremes of `e_ij` over all pairs `i < j`.
fn distance_extremes(fm: &FeatureMatrix) -> (f64, f64) {
    let n = fm.rows();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for j in i + 1..n {
                let e = fm.sq_dist(i, j);
                lo = lo.min(e);
                hi = hi.max(e);
            }
            (lo, hi)
        })
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |a, b| (a.0.min(b.0), a.1.max(b.1)),
        )
}

/// Cutoff `q_w` = the `quantile_level` quantile of the off-diagonal
/// similarities (each unordered pair counted once).
pub fn pairwise_similarity_threshold(
    fm: &FeatureMatrix,
    quantile_level: f64,
    opts: &ThresholdOptions,
) -> Result<SimilarityCutoff> {
    if !(quantile_level > 0.0 && quantile_level < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "quantile level must be in (0, 1) (got {quantile_level})"
        )));
    }
    let n = fm.rows();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "need at least two nodes to compare".into(),
        ));
    }
    let (min_e, max_e) = distance_extremes(fm);
    if !(min_e < max_e) {
        return Err(Error::DegenerateSimilarity);
    }
    let mut cut = SimilarityCutoff {
        quantile_level,
        cutoff_w: f64::NAN,
        cutoff_e: f64::NAN,
        min_e,
        max_e,
        exact: n <= opts.exact_limit,
    };
    let mut sims: Vec<f64> = if cut.exact {
        (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let cut = &cut;
                (i + 1..n).map(move |j| cut.similarity(fm.sq_dist(i, j)))
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
        (0..opts.sample_pairs.max(1))
            .map(|_| {
                let i = rng.random_range(0..n);
                let mut j = rng.random_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                (i, j)
            })
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(i, j)| cut.similarity(fm.sq_dist(i, j)))
            .collect()
    };
    cut.cutoff_w = quantile(&mut sims, quantile_level);
    cut.cutoff_e = min_e + (1.0 - cut.cutoff_w) * (max_e - min_e);
    Ok(cut)
}

/// Reduced similarity `W_r` in compressed rows, with the row sums `d_ii`
/// that turn it into the row-stochastic `W_n = D^{-1} W_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSimilarity {
    offsets: Vec<usize>,
    cols: Vec<u32>,
    weights: Vec<f64>,
    row_sums: Vec<f64>,
    pub cutoff: SimilarityCutoff,
}

impl SparseSimilarity {
    pub fn node_count(&self) -> usize {
        self.row_sums.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// Column ids and unnormalized weights of row `i`, diagonal included.
    pub fn row(&self, i: usize) -> (&[u32], &[f64]) {
        let r = self.offsets[i]..self.offsets[i + 1];
        (&self.cols[r.clone()], &self.weights[r])
    }

    pub fn row_sums(&self) -> &[f64] {
        &self.row_sums
    }

    /// Entries of row `i` of `W_n`.
    pub fn normalized_row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (cols, w) = self.row(i);
        let d = self.row_sums[i];
        cols.iter().zip(w).map(move |(&j, &x)| (j as usize, x / d))
    }

    /// Rows whose only retained entry is the diagonal.
    pub fn self_only_rows(&self) -> usize {
        (0..self.node_count())
            .filter(|&i| self.offsets[i + 1] - self.offsets[i] == 1)
            .count()
    }

    /// `out = W_n^T g`. `W_r` is symmetric, so column `j` of `W_n` is row `j`
    /// of `W_r` scaled by `1 / d_ii`; each output is a gather in column order.
    pub fn transpose_apply(&self, g: &[f64], out: &mut [f64]) {
        let scaled: Vec<f64> = g.iter().zip(&self.row_sums).map(|(x, d)| x / d).collect();
        out.par_iter_mut()
            .with_min_len(1024)
            .enumerate()
            .for_each(|(j, o)| {
                let (cols, w) = self.row(j);
                *o = cols
                    .iter()
                    .zip(w)
                    .map(|(&i, &x)| x * scaled[i as usize])
                    .sum();
            });
    }
}

/// Streams the rows of `W`, keeping the diagonal and every pair above the
/// cutoff. The diagonal (`w_ii = 1`) always survives, so no row is empty.
pub fn build_similarity(fm: &FeatureMatrix, cutoff: &SimilarityCutoff) -> SparseSimilarity {
    let n = fm.rows();
    let rows: Vec<Vec<(u32, f64)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = Vec::new();
            for j in 0..n {
                if j == i {
                    row.push((j as u32, 1.0));
                    continue;
                }
                let w = cutoff.similarity(fm.sq_dist(i, j));
                if w > cutoff.cutoff_w {
                    row.push((j as u32, w));
                }
            }
            row
        })
        .collect();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    let nnz: usize = rows.iter().map(Vec::len).sum();
    let mut cols = Vec::with_capacity(nnz);
    let mut weights = Vec::with_capacity(nnz);
    let mut row_sums = Vec::with_capacity(n);
    for row in rows {
        row_sums.push(row.iter().map(|&(_, w)| w).sum());
        for (j, w) in row {
            cols.push(j);
            weights.push(w);
        }
        offsets.push(cols.len());
    }
    SparseSimilarity {
        offsets,
        cols,
        weights,
        row_sums,
        cutoff: *cutoff,
    }
}
