//! Features followed by labeling, the unit reused by every command and by
//! the masked-seed protocol.

use serde::{Deserialize, Serialize};

use crate::apu::{run_apu, ApuConfig, ApuOutcome};
use crate::error::Result;
use crate::graph::Graph;
use crate::ingest::SeedSet;
use crate::nedbit::{assemble_features, NedbitConfig, NedbitFeatures};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LabelingConfig {
    pub features: NedbitConfig,
    pub apu: ApuConfig,
}

pub fn run_labeling(g: &Graph, seeds: &SeedSet, cfg: &LabelingConfig) -> Result<(NedbitFeatures, ApuOutcome)> {
    let features = assemble_features(g, seeds, &cfg.features)?;
    let outcome = run_apu(&features.normalized, seeds, &cfg.apu)?;
    Ok((features, outcome))
}
