//! Scored seed genes: loading, mapping onto graph ids, and fold masking.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Seed genes with their association scores, keyed by graph node id.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    node_count: usize,
    members: Vec<usize>,
    scores: Vec<f64>,
    is_member: Vec<bool>,
    s_min: f64,
    s_max: f64,
}

impl SeedSet {
    /// Builds a seed set over a graph with `node_count` nodes. Scores must be
    /// finite and in `(0, 1]`; a repeated id is an error.
    pub fn new(node_count: usize, entries: impl IntoIterator<Item = (usize, f64)>) -> Result<Self> {
        let mut pairs: Vec<(usize, f64)> = entries.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::NoMappableSeeds { dropped: 0 });
        }
        pairs.sort_by_key(|&(id, _)| id);
        let mut is_member = vec![false; node_count];
        for &(id, score) in &pairs {
            if id >= node_count {
                return Err(Error::InvalidParameter(format!(
                    "seed id {id} out of range for {node_count} nodes"
                )));
            }
            if is_member[id] {
                return Err(Error::InvalidParameter(format!("seed id {id} given twice")));
            }
            if !(score.is_finite() && score > 0.0 && score <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "seed score {score} for id {id} is outside (0, 1]"
                )));
            }
            is_member[id] = true;
        }
        let (members, scores): (Vec<usize>, Vec<f64>) = pairs.into_iter().unzip();
        let s_min = scores.iter().copied().fold(f64::INFINITY, f64::min);
        let s_max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(SeedSet {
            node_count,
            members,
            scores,
            is_member,
            s_min,
            s_max,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Member ids in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, node: usize) -> bool {
        self.is_member.get(node).copied().unwrap_or(false)
    }

    pub fn score(&self, node: usize) -> Option<f64> {
        self.members
            .binary_search(&node)
            .ok()
            .map(|pos| self.scores[pos])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.members.iter().copied().zip(self.scores.iter().copied())
    }

    pub fn min_score(&self) -> f64 {
        self.s_min
    }

    pub fn max_score(&self) -> f64 {
        self.s_max
    }

    /// Dense vector with the score on members and zero elsewhere.
    pub fn score_vector(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.node_count];
        for (id, s) in self.iter() {
            v[id] = s;
        }
        v
    }

    /// Writes `name<TAB>score` rows in id order.
    pub fn write_tsv<W: Write>(&self, g: &Graph, mut out: W) -> std::io::Result<()> {
        for (id, s) in self.iter() {
            writeln!(out, "{}\t{}", g.name(id), s)?;
        }
        Ok(())
    }

    /// Removes fold `fold` of a seeded `folds`-way partition of the members.
    /// Returns the retained seeds and the held-out ids (sorted).
    pub fn mask(&self, fold: usize, folds: usize, rng_seed: u64) -> Result<(SeedSet, Vec<usize>)> {
        let blocks = fold_partition(&self.members, folds, rng_seed)?;
        if fold >= folds {
            return Err(Error::InvalidParameter(format!(
                "fold {fold} out of range for {folds} folds"
            )));
        }
        let mut held_out = blocks[fold].clone();
        held_out.sort_unstable();
        let retained = self
            .iter()
            .filter(|(id, _)| held_out.binary_search(id).is_err());
        let kept = SeedSet::new(self.node_count, retained)?;
        Ok((kept, held_out))
    }
}

/// Shuffles `items` with a seeded generator and cuts them into `folds`
/// blocks; the first `len % folds` blocks receive one extra element.
pub fn fold_partition(items: &[usize], folds: usize, rng_seed: u64) -> Result<Vec<Vec<usize>>> {
    if folds < 2 {
        return Err(Error::InvalidParameter(format!(
            "folds must be at least 2 (got {folds})"
        )));
    }
    if folds > items.len() {
        return Err(Error::InvalidParameter(format!(
            "cannot split {} seeds into {folds} folds",
            items.len()
        )));
    }
    let mut shuffled = items.to_vec();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(rng_seed));
    let base = items.len() / folds;
    let extra = items.len() % folds;
    let mut blocks = Vec::with_capacity(folds);
    let mut start = 0;
    for f in 0..folds {
        let size = base + usize::from(f < extra);
        blocks.push(shuffled[start..start + size].to_vec());
        start += size;
    }
    Ok(blocks)
}

/// What happened to the rows of a seed file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SeedReport {
    pub rows: usize,
    pub mapped: usize,
    /// Names absent from the graph, in file order.
    pub dropped: Vec<String>,
    /// Rows repeating an earlier gene; the larger score is kept.
    pub duplicates: usize,
}

/// Held-out seeds of one masking fold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskReport {
    pub fold: usize,
    pub held_out: Vec<String>,
    pub retained_count: usize,
}

/// Parses `gene<TAB>score` rows; `#` lines are comments.
pub fn parse_seeds(path: &Path) -> Result<Vec<(String, f64)>> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: lineno + 1,
            message,
        };
        let mut cols = line.split('\t');
        let name = cols.next().unwrap_or("").trim();
        let raw = cols
            .next()
            .ok_or_else(|| parse_err("expected `gene<TAB>score`".into()))?
            .trim();
        if name.is_empty() {
            return Err(parse_err("empty gene name".into()));
        }
        let score: f64 = raw
            .parse()
            .map_err(|_| parse_err(format!("score `{raw}` is not a number")))?;
        if !(score.is_finite() && score > 0.0 && score <= 1.0) {
            return Err(parse_err(format!("score {raw} is outside (0, 1]")));
        }
        rows.push((name.to_string(), score));
    }
    Ok(rows)
}

pub fn load_seeds(path: &Path, g: &Graph) -> Result<(SeedSet, SeedReport)> {
    let rows = parse_seeds(path)?;
    let mut report = SeedReport {
        rows: rows.len(),
        ..Default::default()
    };
    let mut best: HashMap<usize, f64> = HashMap::new();
    for (name, score) in rows {
        match g.id_of(&name) {
            Some(id) => {
                let slot = best.entry(id).or_insert(score);
                *slot = slot.max(score);
            }
            None => {
                log::warn!("seed gene {name} is not in the network; dropping it");
                report.dropped.push(name);
            }
        }
    }
    report.mapped = best.len();
    report.duplicates = report.rows - report.dropped.len() - report.mapped;
    if best.is_empty() {
        return Err(Error::NoMappableSeeds {
            dropped: report.dropped.len(),
        });
    }
    let seeds = SeedSet::new(g.node_count(), best)?;
    Ok((seeds, report))
}
