//! NetShort: harmonic centrality over score-weighted shortest paths.
//!
//! Edge `(i, j)` costs `2 / (s~_i + s~_j)`, where `s~_i = s_i / max S` on
//! seeds and `alpha * min S / max S` elsewhere. Paths through high-scoring
//! seeds are short, so nodes reachable through many seeds score high.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ingest::SeedSet;

/// Normalized node scores `s~` used to weight edges.
pub fn normalized_scores(seeds: &SeedSet, alpha: f64) -> Vec<f64> {
    let max = seeds.max_score();
    let background = alpha * seeds.min_score() / max;
    let mut s = vec![background; seeds.node_count()];
    for (id, score) in seeds.iter() {
        s[id] = score / max;
    }
    s
}

pub fn edge_weight(normalized: &[f64], i: usize, j: usize) -> f64 {
    2.0 / (normalized[i] + normalized[j])
}

/// `NS_i = sum_{j != i} 1 / d_ij`, unreachable pairs contributing zero.
pub fn netshort(g: &Graph, seeds: &SeedSet, alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "NetShort penalization must be in (0, 1] (got {alpha})"
        )));
    }
    if seeds.node_count() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            got: seeds.node_count(),
        });
    }
    let s = normalized_scores(seeds, alpha);
    Ok(harmonic_centrality(g, |i, j| edge_weight(&s, i, j)))
}

/// Weighted harmonic centrality with one Dijkstra per source. Sources run in
/// parallel; each sums its inverse distances in target-id order.
pub fn harmonic_centrality<W>(g: &Graph, weight: W) -> Vec<f64>
where
    W: Fn(usize, usize) -> f64 + Sync,
{
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || (vec![f64::INFINITY; n], BinaryHeap::new()),
            |(dist, heap), src| {
                dijkstra(g, &weight, src, dist, heap);
                let mut total = 0.0;
                for (j, d) in dist.iter_mut().enumerate() {
                    if j != src && d.is_finite() {
                        total += 1.0 / *d;
                    }
                    *d = f64::INFINITY;
                }
                total
            },
        )
        .collect()
}

fn dijkstra<W>(
    g: &Graph,
    weight: &W,
    src: usize,
    dist: &mut [f64],
    heap: &mut BinaryHeap<Reverse<(u64, usize)>>,
) where
    W: Fn(usize, usize) -> f64,
{
    heap.clear();
    dist[src] = 0.0;
    // nonnegative f64 bit patterns order like the values
    heap.push(Reverse((0f64.to_bits(), src)));
    while let Some(Reverse((bits, u))) = heap.pop() {
        let d = f64::from_bits(bits);
        if d > dist[u] {
            continue;
        }
        for &v in g.neighbors(u) {
            let nd = d + weight(u, v);
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd.to_bits(), v)));
            }
        }
    }
}
