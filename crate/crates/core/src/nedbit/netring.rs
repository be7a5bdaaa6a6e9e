//! NetRing: ring partition around the seed set and the ring-by-ring rank.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ingest::SeedSet;

/// Nodes grouped by their hop distance to the nearest seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPartition {
    /// `level[i]` is the minimal hop distance from node `i` to a seed.
    pub level: Vec<usize>,
    /// `rings[l]` lists the nodes at level `l` in increasing id order.
    pub rings: Vec<Vec<usize>>,
}

impl RingPartition {
    /// Largest ring level.
    pub fn max_level(&self) -> usize {
        self.rings.len().saturating_sub(1)
    }
}

/// Multi-source BFS from the seed set. Fails if some node is unreachable.
pub fn ring_partition(g: &Graph, seeds: &SeedSet) -> Result<RingPartition> {
    let n = g.node_count();
    if seeds.is_empty() {
        return Err(Error::InvalidParameter("seed set is empty".into()));
    }
    let mut level = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in seeds.members() {
        level[s] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let unreachable = level.iter().filter(|&&l| l == usize::MAX).count();
    if unreachable > 0 {
        return Err(Error::Disconnected { unreachable });
    }
    let max_level = level.iter().copied().max().unwrap_or(0);
    let mut rings = vec![Vec::new(); max_level + 1];
    for (i, &l) in level.iter().enumerate() {
        rings[l].push(i);
    }
    Ok(RingPartition { level, rings })
}

/// Initial rank: `1 - s_i / max S` on seeds, 1 elsewhere.
pub fn initial_rank(seeds: &SeedSet) -> Vec<f64> {
    let mut r = vec![1.0; seeds.node_count()];
    let max = seeds.max_score();
    for (id, s) in seeds.iter() {
        r[id] = 1.0 - s / max;
    }
    r
}

/// NetRing rank.
///
/// Seeds mix their initial rank with the mean initial rank of their
/// neighbors. A non-seed at level `l` gets
/// `l + (sum_{j in O_i} r^_j + sum_{j in R_i(l-1)} (r_j - (l-1))) / k_i`,
/// where `R_i(l-1)` are its neighbors one ring closer and `O_i` the rest.
/// The shift by `l - 1` is applied to each lower-ring neighbor so that its
/// rank is brought back to the scale of an initial rank.
pub fn netring(g: &Graph, seeds: &SeedSet, rp: &RingPartition, alpha: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "NetRing mix must be in [0, 1] (got {alpha})"
        )));
    }
    let n = g.node_count();
    if rp.level.len() != n || seeds.node_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rp.level.len(),
        });
    }
    let init = initial_rank(seeds);
    let mut rank = vec![0.0; n];
    for &i in seeds.members() {
        let k = g.degree(i);
        let mean = if k == 0 {
            0.0
        } else {
            g.neighbors(i).iter().map(|&j| init[j]).sum::<f64>() / k as f64
        };
        rank[i] = alpha * init[i] + (1.0 - alpha) * mean;
    }
    for (l, ring) in rp.rings.iter().enumerate().skip(1) {
        let lower = (l - 1) as f64;
        for &i in ring {
            let mut acc = 0.0;
            for &j in g.neighbors(i) {
                if rp.level[j] + 1 == l {
                    acc += rank[j] - lower;
                } else {
                    acc += init[j];
                }
            }
            // a node at level >= 1 has a neighbor one ring closer, so k_i >= 1
            rank[i] = l as f64 + acc / g.degree(i) as f64;
        }
    }
    Ok(rank)
}
