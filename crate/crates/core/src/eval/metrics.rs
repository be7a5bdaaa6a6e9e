use serde::{Deserialize, Serialize};

use crate::apu::Label;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassScore {
    pub label: Label,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Number of true members.
    pub support: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Averages {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    /// `confusion[true][predicted]`, class-index order.
    pub confusion: [[usize; 5]; 5],
    pub per_class: Vec<ClassScore>,
    /// Unweighted mean over the classes seen in either label sequence.
    pub macro_avg: Averages,
    /// Support-weighted mean over the same classes.
    pub weighted_avg: Averages,
    pub accuracy: f64,
    pub total: usize,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

pub fn classification_metrics(truth: &[Label], predicted: &[Label]) -> Result<ClassMetrics> {
    if truth.len() != predicted.len() {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            got: predicted.len(),
        });
    }
    let mut confusion = [[0usize; 5]; 5];
    for (t, p) in truth.iter().zip(predicted) {
        confusion[t.index()][p.index()] += 1;
    }
    let total = truth.len();
    let per_class: Vec<ClassScore> = Label::ALL
        .iter()
        .map(|&label| {
            let c = label.index();
            let tp = confusion[c][c];
            let support: usize = confusion[c].iter().sum();
            let predicted_as: usize = (0..5).map(|r| confusion[r][c]).sum();
            let precision = ratio(tp, predicted_as);
            let recall = ratio(tp, support);
            ClassScore {
                label,
                precision,
                recall,
                f1: f1(precision, recall),
                support,
            }
        })
        .collect();
    let seen: Vec<&ClassScore> = per_class
        .iter()
        .filter(|s| {
            let c = s.label.index();
            s.support > 0 || (0..5).any(|r| confusion[r][c] > 0)
        })
        .collect();
    let k = seen.len().max(1) as f64;
    let macro_avg = Averages {
        precision: seen.iter().map(|s| s.precision).sum::<f64>() / k,
        recall: seen.iter().map(|s| s.recall).sum::<f64>() / k,
        f1: seen.iter().map(|s| s.f1).sum::<f64>() / k,
    };
    let weight = |s: &ClassScore| ratio(s.support, total);
    let weighted_avg = Averages {
        precision: seen.iter().map(|s| weight(s) * s.precision).sum(),
        recall: seen.iter().map(|s| weight(s) * s.recall).sum(),
        f1: seen.iter().map(|s| weight(s) * s.f1).sum(),
    };
    let correct: usize = (0..5).map(|c| confusion[c][c]).sum();
    Ok(ClassMetrics {
        confusion,
        per_class,
        macro_avg,
        weighted_avg,
        accuracy: ratio(correct, total),
        total,
    })
}

impl ClassMetrics {
    /// Tab-separated precision/recall/F1 table with macro, weighted and
    /// accuracy rows.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("label\tprecision\trecall\tf1\tsupport\n");
        for s in &self.per_class {
            out += &format!("{}\t{:.6}\t{:.6}\t{:.6}\t{}\n", s.label, s.precision, s.recall, s.f1, s.support);
        }
        for (name, a) in [("macro avg", &self.macro_avg), ("weighted avg", &self.weighted_avg)] {
            out += &format!("{name}\t{:.6}\t{:.6}\t{:.6}\t{}\n", a.precision, a.recall, a.f1, self.total);
        }
        out += &format!("accuracy\t{:.6}\t\t\t{}\n", self.accuracy, self.total);
        out
    }
}
