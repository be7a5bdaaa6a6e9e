use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::propagate::PropagationState;
use crate::error::{Error, Result};
use crate::fuzzy_ceil;
use crate::ingest::SeedSet;

/// The five classes, in class-index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    P,
    LP,
    WN,
    LN,
    RN,
}

impl Label {
    pub const ALL: [Label; 5] = [Label::P, Label::LP, Label::WN, Label::LN, Label::RN];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Label> {
        Label::ALL.get(i).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::P => "P",
            Label::LP => "LP",
            Label::WN => "WN",
            Label::LN => "LN",
            Label::RN => "RN",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        Label::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown label `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelAssignment {
    pub labels: Vec<Label>,
    /// Nodes that are neither P nor RN, by decreasing `g_inf`.
    pub ranking: Vec<usize>,
    pub split: (f64, f64),
}

impl LabelAssignment {
    pub fn count(&self, label: Label) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// 1-based position of each node in `ranking`, `None` for P and RN.
    pub fn ranks(&self) -> Vec<Option<usize>> {
        let mut r = vec![None; self.labels.len()];
        for (pos, &i) in self.ranking.iter().enumerate() {
            r[i] = Some(pos + 1);
        }
        r
    }
}

/// Sorts the undetermined nodes by `g_inf` (descending, ties to the smaller
/// id) and cuts the ranking at `ceil(f1 u)` and `ceil(f2 u)`.
pub fn assign_labels(
    ps: &PropagationState,
    seeds: &SeedSet,
    rn: &[usize],
    split: (f64, f64),
) -> Result<LabelAssignment> {
    let (f1, f2) = split;
    if !(f1 > 0.0 && f1 <= f2 && f2 < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "split fractions must satisfy 0 < f1 <= f2 < 1 (got {f1}, {f2})"
        )));
    }
    let n = ps.g_inf.len();
    let mut labels = vec![Label::LN; n];
    for &i in seeds.members() {
        labels[i] = Label::P;
    }
    for &i in rn {
        if labels[i] == Label::P {
            return Err(Error::InvalidParameter(format!("node {i} is both P and RN")));
        }
        labels[i] = Label::RN;
    }
    let mut ranking: Vec<usize> = (0..n)
        .filter(|&i| !matches!(labels[i], Label::P | Label::RN))
        .collect();
    ranking.sort_by(|&a, &b| ps.g_inf[b].total_cmp(&ps.g_inf[a]).then(a.cmp(&b)));
    let u = ranking.len() as f64;
    let lp_end = fuzzy_ceil(f1 * u).min(ranking.len());
    let wn_end = fuzzy_ceil(f2 * u).min(ranking.len()).max(lp_end);
    for (pos, &i) in ranking.iter().enumerate() {
        labels[i] = if pos < lp_end {
            Label::LP
        } else if pos < wn_end {
            Label::WN
        } else {
            Label::LN
        };
    }
    Ok(LabelAssignment {
        labels,
        ranking,
        split,
    })
}
