//! Random instances and dense reference implementations shared by the
//! integration tests. Nothing here calls into the code under test except to
//! build inputs.

#![allow(dead_code)]

use genepu::{FeatureMatrix, Graph, SeedSet};
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph on `n` nodes restricted to its largest component.
/// Retries with a new stream until the component has at least `min_nodes`.
pub fn random_connected_graph(n: usize, p: f64, seed: u64, min_nodes: usize) -> Graph {
    let mut r = rng(seed);
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if r.random::<f64>() < p {
                    edges.push((format!("v{i}"), format!("v{j}")));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        let g = Graph::from_edges(&edges).unwrap().largest_connected_component();
        if g.node_count() >= min_nodes {
            return g;
        }
    }
}

/// Random seed subset of size `count` with scores in `(0, 1]`.
pub fn random_seeds(g: &Graph, count: usize, seed: u64) -> SeedSet {
    let mut r = rng(seed);
    let mut ids: Vec<usize> = (0..g.node_count()).collect();
    ids.shuffle(&mut r);
    let entries: Vec<(usize, f64)> = ids[..count.clamp(1, g.node_count())]
        .iter()
        .map(|&i| (i, r.random_range(0.05..=1.0)))
        .collect();
    SeedSet::new(g.node_count(), entries).unwrap()
}

pub fn adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

pub fn combinatorial_laplacian(g: &Graph) -> DMatrix<f64> {
    let a = adjacency(g);
    let mut l = -a;
    for i in 0..g.node_count() {
        l[(i, i)] = g.degree(i) as f64;
    }
    l
}

pub fn random_walk_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let a = adjacency(g);
    DMatrix::from_fn(n, n, |i, j| {
        let k = g.degree(i) as f64;
        if i == j {
            1.0
        } else {
            -a[(i, j)] / k
        }
    })
}

/// `exp(-L t) v` through the eigendecomposition of the symmetric `L`.
pub fn heat_oracle(g: &Graph, v: &[f64], t: f64) -> Vec<f64> {
    let eig = combinatorial_laplacian(g).symmetric_eigen();
    let q = &eig.eigenvectors;
    let coeff = q.transpose() * DVector::from_column_slice(v);
    let scaled = DVector::from_fn(coeff.len(), |i, _| coeff[i] * (-eig.eigenvalues[i] * t).exp());
    (q * scaled).iter().copied().collect()
}

/// `exp(-L_b t) v` through nalgebra's Padé scaling-and-squaring exponential.
pub fn balanced_oracle(g: &Graph, v: &[f64], t: f64) -> Vec<f64> {
    let m = (random_walk_laplacian(g) * -t).exp();
    (m * DVector::from_column_slice(v)).iter().copied().collect()
}

/// `max |a - b| / max |b|`.
pub fn relative_error(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// All-pairs shortest paths by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph, weight: impl Fn(usize, usize) -> f64) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (u, v) in g.edges() {
        let w = weight(u, v);
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + d[k][j];
                if cand < d[i][j] {
                    d[i][j] = cand;
                }
            }
        }
    }
    d
}

/// NetShort straight from the definition, on Floyd–Warshall distances.
pub fn netshort_oracle(g: &Graph, seeds: &SeedSet, alpha: f64) -> Vec<f64> {
    let n = g.node_count();
    let max = seeds.iter().map(|(_, s)| s).fold(0.0f64, f64::max);
    let min = seeds.iter().map(|(_, s)| s).fold(f64::INFINITY, f64::min);
    let s: Vec<f64> = (0..n)
        .map(|i| seeds.score(i).map_or(alpha * min / max, |x| x / max))
        .collect();
    let d = floyd_warshall(g, |i, j| 2.0 / (s[i] + s[j]));
    (0..n)
        .map(|i| (0..n).filter(|&j| j != i && d[i][j].is_finite()).map(|j| 1.0 / d[i][j]).sum())
        .collect()
}

pub fn random_features(n: usize, d: usize, seed: u64) -> FeatureMatrix {
    let mut r = rng(seed);
    let data: Vec<f64> = (0..n * d).map(|_| r.random::<f64>()).collect();
    FeatureMatrix::new(n, d, data).unwrap()
}

/// Type-7 quantile by full sort.
pub fn sorted_quantile(mut v: Vec<f64>, level: f64) -> f64 {
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * level;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(v.len() - 1);
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

/// Dense `W`, thresholded and row-normalized into `W_n`.
pub fn dense_wn(fm: &FeatureMatrix, level: f64) -> DMatrix<f64> {
    let n = fm.rows();
    let e = DMatrix::from_fn(n, n, |i, j| {
        fm.row(i).iter().zip(fm.row(j)).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
    });
    let mut off = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            off.push(e[(i, j)]);
        }
    }
    let m = off.iter().copied().fold(f64::INFINITY, f64::min);
    let big_m = off.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 1.0 - (e[(i, j)] - m) / (big_m - m) });
    let mut w_off = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            w_off.push(w[(i, j)]);
        }
    }
    let q = sorted_quantile(w_off, level);
    let mut wr = DMatrix::from_fn(n, n, |i, j| if i == j || w[(i, j)] > q { w[(i, j)] } else { 0.0 });
    for i in 0..n {
        let d: f64 = wr.row(i).sum();
        for j in 0..n {
            wr[(i, j)] /= d;
        }
    }
    wr
}

/// Solves `(I - (1 - alpha) W_n^T) g = alpha g0`.
pub fn direct_fixed_point(wn: &DMatrix<f64>, g0: &[f64], alpha: f64) -> Vec<f64> {
    let n = wn.nrows();
    let a = DMatrix::identity(n, n) - wn.transpose() * (1.0 - alpha);
    let b = DVector::from_column_slice(g0) * alpha;
    a.lu().solve(&b).expect("nonsingular").iter().copied().collect()
}

/// Relabels node names of `g` by a random permutation; returns the new graph
/// and `perm` with `perm[old_id] = new_id`.
pub fn permuted(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
    let n = g.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng(seed));
    // edges listed so that first-seen interning follows `order`
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut pos = vec![0; n];
    for (p, &old) in order.iter().enumerate() {
        pos[old] = p;
    }
    let mut pairs: Vec<(usize, usize)> = g.edges().map(|(u, v)| {
        let (a, b) = (pos[u], pos[v]);
        if a < b { (a, b) } else { (b, a) }
    }).collect();
    pairs.sort_unstable();
    for (a, b) in pairs {
        edges.push((g.name(order[a]).to_string(), g.name(order[b]).to_string()));
    }
    let h = Graph::from_edges(&edges).unwrap();
    let perm: Vec<usize> = (0..n).map(|old| h.id_of(g.name(old)).unwrap()).collect();
    (h, perm)
}
