//! Masked-seed recovery: hide one fold of seeds, recompute features and
//! labels as if those genes were unlabeled, and record where they land.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apu::Label;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ingest::SeedSet;
use crate::pipeline::{run_labeling, LabelingConfig};

/// Classes a held-out seed can end up in.
const RECOVERY_CLASSES: [Label; 4] = [Label::LP, Label::WN, Label::LN, Label::RN];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRecovery {
    pub label: Label,
    pub count: usize,
    pub fraction: f64,
    /// Association-score statistics of the held-out seeds in this class.
    pub score_mean: Option<f64>,
    pub score_median: Option<f64>,
    pub score_mode: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldOutcome {
    pub fold: usize,
    pub held_out: Vec<usize>,
    pub retained: usize,
    /// Set when the fold's pipeline failed; `classes` is then empty.
    pub error: Option<String>,
    pub iterations: Option<usize>,
    pub classes: Vec<ClassRecovery>,
}

/// Mean and sample standard deviation (ddof 1; zero for fewer than two values).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Option<MeanStd> {
        if values.is_empty() {
            return None;
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n < 2 {
            0.0
        } else {
            (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64).sqrt()
        };
        Some(MeanStd { mean, std, n })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRecovery {
    pub label: Label,
    pub percent: Option<MeanStd>,
    pub count: Option<MeanStd>,
    pub score_mean: Option<MeanStd>,
    pub score_median: Option<MeanStd>,
    pub score_mode: Option<MeanStd>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskedRecoveryReport {
    pub folds: usize,
    pub rng_seed: u64,
    pub outcomes: Vec<FoldOutcome>,
    pub aggregate: Vec<AggregateRecovery>,
    pub failed_folds: Vec<usize>,
}

impl MaskedRecoveryReport {
    pub fn aggregate_for(&self, label: Label) -> Option<&AggregateRecovery> {
        self.aggregate.iter().find(|a| a.label == label)
    }

    /// Tab-separated table: one row per class with `mean ± std` cells.
    pub fn to_tsv(&self) -> String {
        let cell = |m: &Option<MeanStd>| match m {
            Some(m) => format!("{:.3} ± {:.3}", m.mean, m.std),
            None => "NA".to_string(),
        };
        let mut out = String::from("label\t% genes\t# genes\tscore mean\tscore median\tscore mode\n");
        for a in &self.aggregate {
            out += &format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                a.label,
                cell(&a.percent),
                cell(&a.count),
                cell(&a.score_mean),
                cell(&a.score_median),
                cell(&a.score_mode)
            );
        }
        out
    }
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Most frequent value; the smallest wins ties.
fn mode(sorted: &[f64]) -> f64 {
    let mut best = sorted[0];
    let mut best_run = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > best_run {
            best_run = j - i;
            best = sorted[i];
        }
        i = j;
    }
    best
}

fn run_fold(g: &Graph, seeds: &SeedSet, fold: usize, folds: usize, cfg: &LabelingConfig, rng_seed: u64) -> Result<FoldOutcome> {
    let (retained, held_out) = seeds.mask(fold, folds, rng_seed)?;
    let mut outcome = FoldOutcome {
        fold,
        held_out: held_out.clone(),
        retained: retained.len(),
        error: None,
        iterations: None,
        classes: Vec::new(),
    };
    let apu = match run_labeling(g, &retained, cfg) {
        Ok((_, apu)) => apu,
        Err(e) => {
            log::warn!("fold {fold} failed: {e}");
            outcome.error = Some(e.to_string());
            return Ok(outcome);
        }
    };
    outcome.iterations = Some(apu.state.iterations);
    for label in RECOVERY_CLASSES {
        let mut scores: Vec<f64> = held_out
            .iter()
            .filter(|&&i| apu.labels.labels[i] == label)
            .map(|&i| seeds.score(i).expect("held-out ids come from the seed set"))
            .collect();
        scores.sort_by(f64::total_cmp);
        let count = scores.len();
        let stats = (!scores.is_empty()).then(|| {
            (
                scores.iter().sum::<f64>() / count as f64,
                median(&scores),
                mode(&scores),
            )
        });
        outcome.classes.push(ClassRecovery {
            label,
            count,
            fraction: count as f64 / held_out.len() as f64,
            score_mean: stats.map(|s| s.0),
            score_median: stats.map(|s| s.1),
            score_mode: stats.map(|s| s.2),
        });
    }
    Ok(outcome)
}

/// Runs every fold (in parallel) and aggregates the successful ones.
pub fn masked_recovery(
    g: &Graph,
    seeds: &SeedSet,
    folds: usize,
    cfg: &LabelingConfig,
    rng_seed: u64,
) -> Result<MaskedRecoveryReport> {
    if folds < 2 || folds > seeds.len() {
        return Err(Error::InvalidParameter(format!(
            "folds must be in 2..={} (got {folds})",
            seeds.len()
        )));
    }
    let outcomes: Vec<FoldOutcome> = (0..folds)
        .into_par_iter()
        .map(|fold| run_fold(g, seeds, fold, folds, cfg, rng_seed))
        .collect::<Result<_>>()?;
    let failed_folds: Vec<usize> = outcomes
        .iter()
        .filter(|o| o.error.is_some())
        .map(|o| o.fold)
        .collect();
    let ok: Vec<&FoldOutcome> = outcomes.iter().filter(|o| o.error.is_none()).collect();
    let aggregate = RECOVERY_CLASSES
        .iter()
        .enumerate()
        .map(|(c, &label)| {
            let collect = |f: &dyn Fn(&ClassRecovery) -> Option<f64>| -> Option<MeanStd> {
                let v: Vec<f64> = ok.iter().filter_map(|o| f(&o.classes[c])).collect();
                MeanStd::of(&v)
            };
            AggregateRecovery {
                label,
                percent: collect(&|r| Some(100.0 * r.fraction)),
                count: collect(&|r| Some(r.count as f64)),
                score_mean: collect(&|r| r.score_mean),
                score_median: collect(&|r| r.score_median),
                score_mode: collect(&|r| r.score_mode),
            }
        })
        .collect();
    Ok(MaskedRecoveryReport {
        folds,
        rng_seed,
        outcomes,
        aggregate,
        failed_folds,
    })
}
