//! Reliable-negative selection and the Markov process with restart.

use serde::{Deserialize, Serialize};

use super::similarity::SparseSimilarity;
use crate::error::{Error, Result};
use crate::ingest::SeedSet;
use crate::matrix::{sq_dist, FeatureMatrix};

/// Stopping threshold on the Euclidean norm of successive differences.
pub const CONVERGENCE_TOL: f64 = 1e-6;

/// The `rn_count` non-seed nodes farthest (squared Euclidean) from the seed
/// centroid; ties go to the smaller id. Defaults to `|P|`. Sorted ascending.
pub fn select_rn(fm: &FeatureMatrix, seeds: &SeedSet, rn_count: Option<usize>) -> Result<Vec<usize>> {
    let n = fm.rows();
    if seeds.node_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: seeds.node_count(),
        });
    }
    let p = seeds.len();
    let count = rn_count.unwrap_or(p);
    if count == 0 || count > n - p {
        return Err(Error::InvalidParameter(format!(
            "rn_count must be in 1..={} (got {count})",
            n - p
        )));
    }
    let d = fm.cols();
    let mut centroid = vec![0.0; d];
    for &i in seeds.members() {
        for (c, x) in centroid.iter_mut().zip(fm.row(i)) {
            *c += x;
        }
    }
    for c in &mut centroid {
        *c /= p as f64;
    }
    let mut candidates: Vec<(f64, usize)> = (0..n)
        .filter(|&i| !seeds.contains(i))
        .map(|i| (sq_dist(fm.row(i), &centroid), i))
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut rn: Vec<usize> = candidates[..count].iter().map(|&(_, i)| i).collect();
    rn.sort_unstable();
    Ok(rn)
}

/// `+1` on seeds, `-|P|/|RN|` on reliable negatives, zero elsewhere.
pub fn initial_state(seeds: &SeedSet, rn: &[usize]) -> Vec<f64> {
    let mut g0 = vec![0.0; seeds.node_count()];
    for &i in seeds.members() {
        g0[i] = 1.0;
    }
    let neg = -(seeds.len() as f64) / rn.len() as f64;
    for &i in rn {
        g0[i] = neg;
    }
    g0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationState {
    pub g0: Vec<f64>,
    pub g_inf: Vec<f64>,
    pub iterations: usize,
    /// `||g_r - g_{r-1}||_2` at the last step.
    pub step_norm: f64,
    /// `||g - ((1 - alpha) W_n^T g + alpha g0)||_2` of the returned vector.
    pub residual: f64,
}

/// Iterates `g_r = (1 - alpha) W_n^T g_{r-1} + alpha g0` from `g0` until both
/// the step norm and the fixed-point residual of the returned vector drop
/// below [`CONVERGENCE_TOL`].
pub fn propagate(ws: &SparseSimilarity, g0: &[f64], alpha: f64, max_iter: usize) -> Result<PropagationState> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "restart alpha must be in (0, 1] (got {alpha})"
        )));
    }
    let n = ws.node_count();
    if g0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: g0.len(),
        });
    }
    let step = |g: &[f64], out: &mut [f64]| {
        ws.transpose_apply(g, out);
        for (o, &x0) in out.iter_mut().zip(g0) {
            *o = (1.0 - alpha) * *o + alpha * x0;
        }
    };
    let mut g = g0.to_vec();
    let mut next = vec![0.0; n];
    step(&g, &mut next);
    let mut norm = diff_norm(&next, &g);
    let mut iterations = 1;
    loop {
        std::mem::swap(&mut g, &mut next);
        if norm < CONVERGENCE_TOL {
            // one more application measures the residual of the current iterate
            step(&g, &mut next);
            let residual = diff_norm(&next, &g);
            if residual < CONVERGENCE_TOL {
                return Ok(PropagationState {
                    g0: g0.to_vec(),
                    g_inf: g,
                    iterations,
                    step_norm: norm,
                    residual,
                });
            }
            norm = residual;
        } else {
            step(&g, &mut next);
            norm = diff_norm(&next, &g);
        }
        if iterations >= max_iter {
            return Err(Error::NotConverged {
                iterations,
                residual: norm,
            });
        }
        iterations += 1;
    }
}

fn diff_norm(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
