//! Validation protocols: per-class classification metrics, masked-seed
//! recovery, and F1 of ranked candidates against an extended gene list.

mod discovery;
mod masked;
mod metrics;

pub use discovery::{discovery_f1, rank_candidates, DiscoveryPoint};
pub use masked::{
    masked_recovery, AggregateRecovery, ClassRecovery, FoldOutcome, MaskedRecoveryReport, MeanStd,
};
pub use metrics::{classification_metrics, Averages, ClassMetrics, ClassScore};
