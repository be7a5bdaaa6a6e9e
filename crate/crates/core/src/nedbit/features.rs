use serde::{Deserialize, Serialize};

use super::{balanced_diffusion, heat_diffusion, netring, netshort, ring_partition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ingest::SeedSet;
use crate::matrix::FeatureMatrix;

pub const FEATURE_NAMES: [&str; 4] = ["heat", "balanced", "netshort", "netring"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NedbitConfig {
    /// Diffusion time shared by both diffusion features.
    pub t: f64,
    /// NetShort penalization of non-seed nodes.
    pub alpha_ns: f64,
    /// NetRing weight of a seed's own initial rank.
    pub alpha_nr: f64,
    /// Per column, whether to apply `ln(1 + x / log_scale)` before scaling.
    pub log_transform: [bool; 4],
    pub log_scale: f64,
}

impl Default for NedbitConfig {
    fn default() -> Self {
        NedbitConfig {
            t: 0.005,
            alpha_ns: 0.5,
            alpha_nr: 0.5,
            log_transform: [true, true, false, false],
            log_scale: 1e-6,
        }
    }
}

impl NedbitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(Error::InvalidParameter(format!("t must be >= 0 (got {})", self.t)));
        }
        if !(self.alpha_ns > 0.0 && self.alpha_ns <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha_ns must be in (0, 1] (got {})",
                self.alpha_ns
            )));
        }
        if !(0.0..=1.0).contains(&self.alpha_nr) {
            return Err(Error::InvalidParameter(format!(
                "alpha_nr must be in [0, 1] (got {})",
                self.alpha_nr
            )));
        }
        if !(self.log_scale.is_finite() && self.log_scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "log_scale must be > 0 (got {})",
                self.log_scale
            )));
        }
        Ok(())
    }
}

/// Min-max bounds of one (possibly log-transformed) column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnBounds {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NedbitFeatures {
    /// Untransformed feature values, columns in [`FEATURE_NAMES`] order.
    pub raw: FeatureMatrix,
    /// Transformed and min-max scaled values, all in `[0, 1]`.
    pub normalized: FeatureMatrix,
    pub bounds: Vec<ColumnBounds>,
    pub config: NedbitConfig,
}

/// Computes the four features for every node and scales each column to `[0, 1]`.
pub fn assemble_features(g: &Graph, seeds: &SeedSet, config: &NedbitConfig) -> Result<NedbitFeatures> {
    config.validate()?;
    let heat = heat_diffusion(g, seeds, config.t)?;
    let balanced = balanced_diffusion(g, seeds, config.t)?;
    let ns = netshort(g, seeds, config.alpha_ns)?;
    let rp = ring_partition(g, seeds)?;
    let nr = netring(g, seeds, &rp, config.alpha_nr)?;
    let raw = FeatureMatrix::from_columns(&[heat, balanced, ns, nr])?;
    let (normalized, bounds) = normalize_columns(&raw, &config.log_transform, config.log_scale, None)?;
    Ok(NedbitFeatures {
        raw,
        normalized,
        bounds,
        config: config.clone(),
    })
}

/// Optionally log-transforms each column, then min-max scales it. With
/// `fixed` bounds (e.g. from a training run) those are used instead of the
/// column's own range and values are clamped into `[0, 1]`.
pub fn normalize_columns(
    raw: &FeatureMatrix,
    log_transform: &[bool],
    log_scale: f64,
    fixed: Option<&[ColumnBounds]>,
) -> Result<(FeatureMatrix, Vec<ColumnBounds>)> {
    let d = raw.cols();
    if log_transform.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: log_transform.len(),
        });
    }
    let mut columns = Vec::with_capacity(d);
    let mut bounds = Vec::with_capacity(d);
    for j in 0..d {
        let mut col = raw.column(j);
        if log_transform[j] {
            for x in &mut col {
                *x = (*x / log_scale).ln_1p();
            }
        }
        let b = match fixed {
            Some(f) => f[j],
            None => {
                let min = col.iter().copied().fold(f64::INFINITY, f64::min);
                let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                ColumnBounds { min, max }
            }
        };
        if !(b.min < b.max) {
            return Err(Error::DegenerateFeature {
                column: FEATURE_NAMES.get(j).map_or_else(|| format!("#{j}"), |s| s.to_string()),
                value: b.min,
            });
        }
        let span = b.max - b.min;
        for x in &mut col {
            *x = ((*x - b.min) / span).clamp(0.0, 1.0);
        }
        columns.push(col);
        bounds.push(b);
    }
    Ok((FeatureMatrix::from_columns(&columns)?, bounds))
}
