//! Planted-partition graphs and seed sets for tests and benchmarks.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Undirected graph whose nodes are split into communities, with edge
/// probability `p_in` inside a community and `p_out` across. Communities are
/// assigned to indices in random order, so node ids carry no community
/// information.
#[derive(Debug, Clone)]
pub struct PlantedPartition {
    pub community: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl PlantedPartition {
    pub fn generate(sizes: &[usize], p_in: f64, p_out: f64, rng_seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let mut community: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(c, &s)| std::iter::repeat_n(c, s))
            .collect();
        community.shuffle(&mut rng);
        let n = community.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let p = if community[i] == community[j] { p_in } else { p_out };
                if rng.random::<f64>() < p {
                    edges.push((i, j));
                }
            }
        }
        PlantedPartition { community, edges }
    }

    pub fn node_name(i: usize) -> String {
        format!("g{i:05}")
    }

    pub fn named_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| (Self::node_name(a), Self::node_name(b)))
            .collect()
    }

    /// The largest connected component as a [`Graph`] together with the
    /// community of each of its nodes.
    pub fn graph(&self) -> (Graph, Vec<usize>) {
        let g = Graph::from_edges(&self.named_edges())
            .expect("planted partition has edges")
            .largest_connected_component();
        let community = g
            .names()
            .iter()
            .map(|name| self.community[name[1..].parse::<usize>().unwrap()])
            .collect();
        (g, community)
    }
}

/// Grows a connected seed module inside `pool`: starting from a random
/// member, repeatedly adds the pool node with the most neighbors already in
/// the module (random priority among ties). Returns sorted ids.
pub fn grow_module(g: &Graph, pool: &[usize], size: usize, rng_seed: u64) -> Vec<usize> {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut in_pool = vec![false; n];
    for &i in pool {
        in_pool[i] = true;
    }
    let mut priority: Vec<usize> = (0..n).collect();
    priority.shuffle(&mut rng);
    let mut links = vec![0usize; n];
    let mut chosen = vec![false; n];
    let mut module = Vec::with_capacity(size);
    let root = pool[rng.random_range(0..pool.len())];
    let mut next = Some(root);
    while let Some(u) = next {
        chosen[u] = true;
        module.push(u);
        if module.len() == size.min(pool.len()) {
            break;
        }
        for &v in g.neighbors(u) {
            links[v] += 1;
        }
        next = (0..n)
            .filter(|&v| in_pool[v] && !chosen[v])
            .max_by_key(|&v| (links[v], priority[v]));
    }
    module.sort_unstable();
    module
}

/// Uniform random subset of `pool` of the given size, sorted.
pub fn random_subset(pool: &[usize], size: usize, rng_seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut v: Vec<usize> = pool.choose_multiple(&mut rng, size).copied().collect();
    v.sort_unstable();
    v
}

/// Association-like scores: multiples of 0.01 in `[0.3, 1.0]`, skewed low.
pub fn random_scores(ids: &[usize], rng_seed: u64) -> Vec<(usize, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    ids.iter()
        .map(|&i| {
            let u: f64 = rng.random();
            let s = 0.3 + 0.7 * u * u;
            (i, (s * 100.0).round() / 100.0)
        })
        .collect()
}
