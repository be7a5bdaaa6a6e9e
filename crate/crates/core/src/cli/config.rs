use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::apu::{ApuConfig, ThresholdOptions};
use crate::classify::TrainConfig;
use crate::error::{Error, Result};
use crate::nedbit::NedbitConfig;
use crate::pipeline::LabelingConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum EdgesFormat {
    /// Two tab-separated gene names per line.
    Tsv,
    /// BioGRID TAB3 export.
    Biogrid,
}

/// Every knob of a run. Serialized into each output so the output can be
/// reproduced from itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub edges: Option<PathBuf>,
    pub edges_format: EdgesFormat,
    pub organism: String,
    pub seeds: Option<PathBuf>,
    pub extended_seeds: Option<PathBuf>,
    pub out_dir: PathBuf,

    pub t: f64,
    pub alpha_ns: f64,
    pub alpha_nr: f64,
    /// heat, balanced, netshort, netring
    pub log_transform: [bool; 4],
    pub log_scale: f64,

    pub alpha_restart: f64,
    pub quantile_level: f64,
    pub split: [f64; 2],
    pub rn_count: Option<usize>,
    pub max_iter: usize,
    pub exact_limit: usize,
    pub sample_pairs: usize,

    pub folds: usize,
    pub rng_seed: u64,
    pub train_fraction: f64,
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
    pub percentages: Vec<f64>,
    /// Worker threads; `None` uses all available cores.
    pub threads: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let nedbit = NedbitConfig::default();
        let apu = ApuConfig::default();
        let train = TrainConfig::default();
        PipelineConfig {
            edges: None,
            edges_format: EdgesFormat::Tsv,
            organism: "9606".into(),
            seeds: None,
            extended_seeds: None,
            out_dir: PathBuf::from("out"),
            t: nedbit.t,
            alpha_ns: nedbit.alpha_ns,
            alpha_nr: nedbit.alpha_nr,
            log_transform: nedbit.log_transform,
            log_scale: nedbit.log_scale,
            alpha_restart: apu.alpha,
            quantile_level: apu.quantile_level,
            split: [apu.split.0, apu.split.1],
            rn_count: apu.rn_count,
            max_iter: apu.max_iter,
            exact_limit: apu.threshold.exact_limit,
            sample_pairs: apu.threshold.sample_pairs,
            folds: 5,
            rng_seed: 42,
            train_fraction: 0.7,
            learning_rate: train.learning_rate,
            epochs: train.epochs,
            l2: train.l2,
            percentages: (1..=10).map(|i| 10.0 * i as f64).collect(),
            threads: None,
        }
    }
}

impl PipelineConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        serde_json::from_str(&text).map_err(|source| Error::Json {
            context: format!("parsing config {}", path.display()),
            source,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn labeling(&self) -> LabelingConfig {
        LabelingConfig {
            features: NedbitConfig {
                t: self.t,
                alpha_ns: self.alpha_ns,
                alpha_nr: self.alpha_nr,
                log_transform: self.log_transform,
                log_scale: self.log_scale,
            },
            apu: ApuConfig {
                alpha: self.alpha_restart,
                quantile_level: self.quantile_level,
                split: (self.split[0], self.split[1]),
                rn_count: self.rn_count,
                max_iter: self.max_iter,
                threshold: ThresholdOptions {
                    exact_limit: self.exact_limit,
                    sample_pairs: self.sample_pairs,
                    rng_seed: self.rng_seed,
                },
            },
        }
    }

    pub fn training(&self) -> TrainConfig {
        TrainConfig {
            learning_rate: self.learning_rate,
            epochs: self.epochs,
            l2: self.l2,
            rng_seed: self.rng_seed,
        }
    }

    /// Range checks for everything not already checked by the stage that
    /// consumes it.
    pub fn validate(&self) -> Result<()> {
        self.labeling().features.validate()?;
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.alpha_restart > 0.0 && self.alpha_restart <= 1.0) {
            return bad(format!("alpha_restart must be in (0, 1] (got {})", self.alpha_restart));
        }
        if !(self.quantile_level > 0.0 && self.quantile_level < 1.0) {
            return bad(format!("quantile_level must be in (0, 1) (got {})", self.quantile_level));
        }
        let [f1, f2] = self.split;
        if !(f1 > 0.0 && f1 <= f2 && f2 < 1.0) {
            return bad(format!("split must satisfy 0 < f1 <= f2 < 1 (got {f1}, {f2})"));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        if self.folds < 2 {
            return bad(format!("folds must be at least 2 (got {})", self.folds));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return bad(format!("train_fraction must be in (0, 1) (got {})", self.train_fraction));
        }
        if !(self.learning_rate > 0.0) || self.l2 < 0.0 {
            return bad("learning_rate must be > 0 and l2 >= 0".into());
        }
        if self.percentages.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
            return bad("percentages must be positive".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        Ok(())
    }
}

/// Command-line overrides; each flag mirrors a [`PipelineConfig`] field.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// JSON config file; flags given on the command line override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub edges: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub edges_format: Option<EdgesFormat>,
    #[arg(long)]
    pub organism: Option<String>,
    #[arg(long)]
    pub seeds: Option<PathBuf>,
    #[arg(long)]
    pub extended_seeds: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub alpha_ns: Option<f64>,
    #[arg(long)]
    pub alpha_nr: Option<f64>,
    /// Four comma-separated booleans: heat,balanced,netshort,netring.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub log_transform: Option<Vec<bool>>,
    #[arg(long)]
    pub log_scale: Option<f64>,
    #[arg(long)]
    pub alpha_restart: Option<f64>,
    #[arg(long)]
    pub quantile_level: Option<f64>,
    /// Two comma-separated cut fractions, e.g. `0.3333,0.6667`.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub split: Option<Vec<f64>>,
    #[arg(long)]
    pub rn_count: Option<usize>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub exact_limit: Option<usize>,
    #[arg(long)]
    pub sample_pairs: Option<usize>,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub rng_seed: Option<u64>,
    #[arg(long)]
    pub train_fraction: Option<f64>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub l2: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub percentages: Option<Vec<f64>>,
    #[arg(long)]
    pub threads: Option<usize>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<PipelineConfig> {
        let mut c = match &self.config {
            Some(path) => PipelineConfig::from_json_file(path)?,
            None => PipelineConfig::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = &self.$field { c.$field = v.clone().into(); })*
            };
        }
        set!(edges_format, organism, out_dir, t, alpha_ns, alpha_nr, log_scale, alpha_restart,
             quantile_level, max_iter, exact_limit, sample_pairs, folds, rng_seed, train_fraction,
             learning_rate, epochs, l2, percentages);
        if self.edges.is_some() {
            c.edges = self.edges.clone();
        }
        if self.seeds.is_some() {
            c.seeds = self.seeds.clone();
        }
        if self.extended_seeds.is_some() {
            c.extended_seeds = self.extended_seeds.clone();
        }
        if self.rn_count.is_some() {
            c.rn_count = self.rn_count;
        }
        if self.threads.is_some() {
            c.threads = self.threads;
        }
        if let Some(v) = &self.log_transform {
            c.log_transform = [v[0], v[1], v[2], v[3]];
        }
        if let Some(v) = &self.split {
            c.split = [v[0], v[1]];
        }
        c.validate()?;
        Ok(c)
    }
}
