use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy_ceil;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscoveryPoint {
    /// Candidate count as a percentage of the extended-only gene count.
    pub pct: f64,
    pub k: usize,
    pub hits: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// All nodes except `exclude`, by decreasing score (ties to the smaller id).
pub fn rank_candidates(scores: &[f64], exclude: &[usize]) -> Vec<usize> {
    let excluded: HashSet<usize> = exclude.iter().copied().collect();
    let mut ids: Vec<usize> = (0..scores.len()).filter(|i| !excluded.contains(i)).collect();
    ids.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    ids
}

/// F1 of the top `ceil(pct/100 * |E|)` ranked genes against
/// `E = extended \ curated`. Curated genes are removed from the ranking
/// before cutting, so they count neither as hits nor as misses.
pub fn discovery_f1(
    ranking: &[usize],
    curated: &[usize],
    extended: &[usize],
    percentages: &[f64],
) -> Result<Vec<DiscoveryPoint>> {
    let curated: HashSet<usize> = curated.iter().copied().collect();
    let targets: HashSet<usize> = extended
        .iter()
        .copied()
        .filter(|i| !curated.contains(i))
        .collect();
    if targets.is_empty() {
        return Err(Error::NoExtendedOnly);
    }
    let ranked: Vec<usize> = ranking
        .iter()
        .copied()
        .filter(|i| !curated.contains(i))
        .collect();
    // hits_at[k] = targets among the first k ranked genes
    let mut hits_at = Vec::with_capacity(ranked.len() + 1);
    hits_at.push(0usize);
    for &i in &ranked {
        let last = *hits_at.last().unwrap();
        hits_at.push(last + usize::from(targets.contains(&i)));
    }
    let mut curve = Vec::with_capacity(percentages.len());
    for &pct in percentages {
        if !(pct.is_finite() && pct > 0.0) {
            return Err(Error::InvalidParameter(format!("percentage must be > 0 (got {pct})")));
        }
        let k = fuzzy_ceil(pct / 100.0 * targets.len() as f64).min(ranked.len());
        let hits = hits_at[k];
        let precision = if k == 0 { 0.0 } else { hits as f64 / k as f64 };
        let recall = hits as f64 / targets.len() as f64;
        let f1 = if hits == 0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        curve.push(DiscoveryPoint {
            pct,
            k,
            hits,
            precision,
            recall,
            f1,
        });
    }
    Ok(curve)
}
