//! Heat and balanced diffusion, `z(t) = exp(-L t) z(0)`, by uniformization.
//!
//! With `c = max_i k_i` both `I - L/c` (for `L = K - A`) and
//! `I - L_b/c` (for `L_b = I - K^{-1} A`) are entrywise nonnegative and
//! row-stochastic, so
//!
//! ```text
//! exp(-L t) v = sum_k  e^{-ct} (ct)^k / k!  P^k v
//! ```
//!
//! is a convex combination of bounded vectors. The series is truncated once
//! the remaining Poisson mass drops below [`POISSON_TAIL`]; long horizons are
//! split into steps of rate at most [`MAX_STEP_RATE`] so `e^{-ct}` never
//! underflows.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ingest::SeedSet;

pub const POISSON_TAIL: f64 = 1e-12;
pub const MAX_STEP_RATE: f64 = 32.0;

const PAR_MIN_ROWS: usize = 2048;

/// Which graph Laplacian drives the diffusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Laplacian {
    /// `L = K - A`: equal flow per link.
    Combinatorial,
    /// `L_b = I - K^{-1} A`: equal flow per node.
    RandomWalk,
}

/// Heat diffusion of the seed scores for time `t`.
pub fn heat_diffusion(g: &Graph, seeds: &SeedSet, t: f64) -> Result<Vec<f64>> {
    diffuse(g, Laplacian::Combinatorial, &seeds.score_vector(), t)
}

/// Balanced diffusion of the seed scores for time `t`.
pub fn balanced_diffusion(g: &Graph, seeds: &SeedSet, t: f64) -> Result<Vec<f64>> {
    diffuse(g, Laplacian::RandomWalk, &seeds.score_vector(), t)
}

/// `exp(-L t) z0` for the chosen Laplacian.
pub fn diffuse(g: &Graph, op: Laplacian, z0: &[f64], t: f64) -> Result<Vec<f64>> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "diffusion time must be finite and >= 0 (got {t})"
        )));
    }
    if z0.len() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            got: z0.len(),
        });
    }
    let c = g.max_degree() as f64;
    let rate = c * t;
    if rate == 0.0 {
        return Ok(z0.to_vec());
    }
    let steps = (rate / MAX_STEP_RATE).ceil().max(1.0) as usize;
    let step_rate = rate / steps as f64;
    let mut z = z0.to_vec();
    let mut buf = vec![0.0; z.len()];
    for _ in 0..steps {
        z = poisson_series(g, op, c, &z, step_rate, &mut buf);
    }
    Ok(z)
}

fn poisson_series(g: &Graph, op: Laplacian, c: f64, v: &[f64], rate: f64, buf: &mut Vec<f64>) -> Vec<f64> {
    let mut term = v.to_vec();
    let mut acc = vec![0.0; v.len()];
    let mut weight = (-rate).exp();
    let mut remaining = 1.0;
    let mut k = 0usize;
    loop {
        for (a, &x) in acc.iter_mut().zip(&term) {
            *a += weight * x;
        }
        remaining -= weight;
        if remaining < POISSON_TAIL {
            break;
        }
        apply_uniformized(g, op, c, &term, buf);
        std::mem::swap(&mut term, buf);
        k += 1;
        weight *= rate / k as f64;
        if weight == 0.0 && k as f64 > rate {
            break;
        }
    }
    acc
}

/// `out = (I - L/c) v`.
fn apply_uniformized(g: &Graph, op: Laplacian, c: f64, v: &[f64], out: &mut [f64]) {
    let row = |i: usize| -> f64 {
        let k = g.degree(i);
        if k == 0 {
            return v[i];
        }
        let s: f64 = g.neighbors(i).iter().map(|&j| v[j]).sum();
        match op {
            Laplacian::Combinatorial => v[i] * (1.0 - k as f64 / c) + s / c,
            Laplacian::RandomWalk => v[i] * (1.0 - 1.0 / c) + s / (k as f64 * c),
        }
    };
    out.par_iter_mut()
        .with_min_len(PAR_MIN_ROWS)
        .enumerate()
        .for_each(|(i, o)| *o = row(i));
}
