//! Five-class multinomial logistic regression, trained by full-batch
//! gradient descent with L2 regularization.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apu::Label;
use crate::error::{Error, Result};
use crate::matrix::FeatureMatrix;
use crate::nedbit::ColumnBounds;

pub const CLASSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
    pub rng_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.1,
            epochs: 2000,
            l2: 1e-4,
            rng_seed: 0,
        }
    }
}

/// Feature scaling to reapply before predicting on new data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub bounds: Vec<ColumnBounds>,
    pub log_transform: Vec<bool>,
    pub log_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoftmaxModel {
    /// `d × 5`, row-major: `weights[k * 5 + c]` links feature `k` to class `c`.
    pub weights: Vec<f64>,
    pub bias: [f64; CLASSES],
    pub config: TrainConfig,
    pub final_loss: f64,
    pub normalization: Option<Normalization>,
}

impl SoftmaxModel {
    pub fn zeros(dim: usize, config: TrainConfig) -> Self {
        SoftmaxModel {
            weights: vec![0.0; dim * CLASSES],
            bias: [0.0; CLASSES],
            config,
            final_loss: f64::NAN,
            normalization: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len() / CLASSES
    }

    /// Class probabilities for one feature vector.
    pub fn probabilities(&self, x: &[f64]) -> [f64; CLASSES] {
        softmax(&scores(&self.weights, &self.bias, x))
    }
}

fn scores(weights: &[f64], bias: &[f64], x: &[f64]) -> [f64; CLASSES] {
    let mut z = [0.0; CLASSES];
    z.copy_from_slice(&bias[..CLASSES]);
    for (k, &xk) in x.iter().enumerate() {
        let w = &weights[k * CLASSES..(k + 1) * CLASSES];
        for c in 0..CLASSES {
            z[c] += xk * w[c];
        }
    }
    z
}

pub fn softmax(z: &[f64; CLASSES]) -> [f64; CLASSES] {
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut p = [0.0; CLASSES];
    let mut total = 0.0;
    for c in 0..CLASSES {
        p[c] = (z[c] - max).exp();
        total += p[c];
    }
    for v in &mut p {
        *v /= total;
    }
    p
}

/// Index of the largest entry; the lowest index wins ties.
pub fn argmax(p: &[f64]) -> usize {
    let mut best = 0;
    for (c, &v) in p.iter().enumerate() {
        if v > p[best] {
            best = c;
        }
    }
    best
}

/// Mean cross-entropy plus `l2 / 2 * ||W||^2` (bias unregularized), with its
/// gradient with respect to the weights and the bias.
pub fn loss_and_gradient(
    weights: &[f64],
    bias: &[f64],
    x: &FeatureMatrix,
    y: &[usize],
    l2: f64,
) -> (f64, Vec<f64>, Vec<f64>) {
    let n = x.rows();
    let d = x.cols();
    let mut loss = 0.0;
    let mut gw = vec![0.0; d * CLASSES];
    let mut gb = vec![0.0; CLASSES];
    for i in 0..n {
        let xi = x.row(i);
        let z = scores(weights, bias, xi);
        let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lse = max + z.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
        loss += lse - z[y[i]];
        let mut p = softmax(&z);
        p[y[i]] -= 1.0;
        for (k, &xk) in xi.iter().enumerate() {
            for c in 0..CLASSES {
                gw[k * CLASSES + c] += xk * p[c];
            }
        }
        for c in 0..CLASSES {
            gb[c] += p[c];
        }
    }
    let inv = 1.0 / n as f64;
    loss *= inv;
    for (g, &w) in gw.iter_mut().zip(weights) {
        *g = *g * inv + l2 * w;
    }
    for g in &mut gb {
        *g *= inv;
    }
    loss += 0.5 * l2 * weights.iter().map(|w| w * w).sum::<f64>();
    (loss, gw, gb)
}

/// Fits the model from zero initialization. Every class must occur.
pub fn train(fm: &FeatureMatrix, labels: &[Label], cfg: &TrainConfig) -> Result<SoftmaxModel> {
    Ok(train_with_history(fm, labels, cfg)?.0)
}

/// As [`train`], also returning the loss before each epoch.
pub fn train_with_history(
    fm: &FeatureMatrix,
    labels: &[Label],
    cfg: &TrainConfig,
) -> Result<(SoftmaxModel, Vec<f64>)> {
    if labels.len() != fm.rows() {
        return Err(Error::DimensionMismatch {
            expected: fm.rows(),
            got: labels.len(),
        });
    }
    for class in Label::ALL {
        if !labels.contains(&class) {
            return Err(Error::MissingClass(class.to_string()));
        }
    }
    if !(cfg.learning_rate > 0.0 && cfg.learning_rate.is_finite()) || cfg.l2 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "learning rate must be > 0 and l2 >= 0 (got {}, {})",
            cfg.learning_rate, cfg.l2
        )));
    }
    let y: Vec<usize> = labels.iter().map(|l| l.index()).collect();
    let mut model = SoftmaxModel::zeros(fm.cols(), cfg.clone());
    let mut history = Vec::with_capacity(cfg.epochs + 1);
    for epoch in 0..=cfg.epochs {
        let (loss, gw, gb) = loss_and_gradient(&model.weights, &model.bias, fm, &y, cfg.l2);
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch });
        }
        history.push(loss);
        model.final_loss = loss;
        if epoch == cfg.epochs {
            break;
        }
        for (w, g) in model.weights.iter_mut().zip(&gw) {
            *w -= cfg.learning_rate * g;
        }
        for (b, g) in model.bias.iter_mut().zip(&gb) {
            *b -= cfg.learning_rate * g;
        }
    }
    if model.weights.iter().chain(&model.bias).any(|w| !w.is_finite()) {
        return Err(Error::Diverged { epoch: cfg.epochs });
    }
    Ok((model, history))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: Label,
    pub probabilities: [f64; CLASSES],
}

pub fn predict(model: &SoftmaxModel, fm: &FeatureMatrix) -> Result<Vec<Prediction>> {
    if fm.cols() != model.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.dim(),
            got: fm.cols(),
        });
    }
    Ok((0..fm.rows())
        .into_par_iter()
        .map(|i| {
            let probabilities = model.probabilities(fm.row(i));
            Prediction {
                label: Label::ALL[argmax(&probabilities)],
                probabilities,
            }
        })
        .collect())
}

/// Per-class shuffled split keeping `round(train_fraction * count)` of each
/// class (at least one on each side) for training. Both id lists are sorted.
pub fn stratified_split(labels: &[Label], train_fraction: f64, rng_seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "train fraction must be in (0, 1) (got {train_fraction})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in Label::ALL {
        let mut ids: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if ids.len() < 2 {
            return Err(Error::TooFewSamples {
                class: class.to_string(),
                count: ids.len(),
            });
        }
        ids.shuffle(&mut rng);
        let n_train = ((train_fraction * ids.len() as f64).round() as usize).clamp(1, ids.len() - 1);
        train.extend_from_slice(&ids[..n_train]);
        test.extend_from_slice(&ids[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}
