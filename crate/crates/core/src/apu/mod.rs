//! Adaptive positive-unlabeled labeling: a similarity graph over feature
//! vectors, reliable negatives far from the seed centroid, a Markov process
//! with restart seeded with `+1`/`-|P|/|RN|`, and a quantile split of the
//! resulting ranking into LP, WN and LN.

mod labels;
mod propagate;
mod similarity;

use serde::{Deserialize, Serialize};

pub use labels::{assign_labels, Label, LabelAssignment};
pub use propagate::{initial_state, propagate, select_rn, PropagationState, CONVERGENCE_TOL};
pub use similarity::{
    build_similarity, pairwise_similarity_threshold, quantile, SimilarityCutoff, SparseSimilarity,
    ThresholdOptions,
};

use crate::error::{Error, Result};
use crate::ingest::SeedSet;
use crate::matrix::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApuConfig {
    /// Restart weight toward `g0`.
    pub alpha: f64,
    pub quantile_level: f64,
    pub split: (f64, f64),
    /// Number of reliable negatives; `None` means `|P|`.
    pub rn_count: Option<usize>,
    pub max_iter: usize,
    pub threshold: ThresholdOptions,
}

impl Default for ApuConfig {
    fn default() -> Self {
        ApuConfig {
            alpha: 0.8,
            quantile_level: 0.95,
            split: (1.0 / 3.0, 2.0 / 3.0),
            rn_count: None,
            max_iter: 1000,
            threshold: ThresholdOptions::default(),
        }
    }
}

/// Everything produced by one labeling run.
#[derive(Debug, Clone, PartialEq)]
pub struct ApuOutcome {
    pub cutoff: SimilarityCutoff,
    pub similarity_nnz: usize,
    pub self_only_rows: usize,
    /// Undetermined nodes with no similarity path to P or RN (`g_inf == 0`);
    /// their order in the ranking comes from the id tie rule alone.
    pub unreached: usize,
    pub rn: Vec<usize>,
    pub state: PropagationState,
    pub labels: LabelAssignment,
}

pub fn run_apu(fm: &FeatureMatrix, seeds: &SeedSet, cfg: &ApuConfig) -> Result<ApuOutcome> {
    if seeds.node_count() != fm.rows() {
        return Err(Error::DimensionMismatch {
            expected: fm.rows(),
            got: seeds.node_count(),
        });
    }
    let cutoff = pairwise_similarity_threshold(fm, cfg.quantile_level, &cfg.threshold)?;
    let ws = build_similarity(fm, &cutoff);
    log::debug!(
        "similarity graph: {} entries, cutoff w > {:.6}",
        ws.nnz(),
        cutoff.cutoff_w
    );
    let rn = select_rn(fm, seeds, cfg.rn_count)?;
    let g0 = initial_state(seeds, &rn);
    let state = propagate(&ws, &g0, cfg.alpha, cfg.max_iter)?;
    let labels = assign_labels(&state, seeds, &rn, cfg.split)?;
    let unreached = labels.ranking.iter().filter(|&&i| state.g_inf[i] == 0.0).count();
    if unreached > 0 {
        log::warn!(
            "{unreached} of {} undetermined nodes are not linked to P or RN in the similarity graph; \
             consider a lower quantile level",
            labels.ranking.len()
        );
    }
    Ok(ApuOutcome {
        cutoff,
        similarity_nnz: ws.nnz(),
        self_only_rows: ws.self_only_rows(),
        unreached,
        rn,
        state,
        labels,
    })
}
