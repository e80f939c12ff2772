//! Confusion counts, ROC curves, AUC and the ROC convex hull.
//!
//! Rates are fractions in `[0, 1]`; ROC points are `(fp_rate, tp_rate)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    pub fn_: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }
}

pub fn confusion<L: PartialEq>(
    labels: &[L],
    predictions: &[L],
    positive: &L,
) -> Result<ConfusionCounts> {
    if labels.len() != predictions.len() {
        return Err(Error::invalid(format!(
            "{} labels but {} predictions",
            labels.len(),
            predictions.len()
        )));
    }
    let mut c = ConfusionCounts::default();
    for (label, predicted) in labels.iter().zip(predictions) {
        match (label == positive, predicted == positive) {
            (true, true) => c.tp += 1,
            (true, false) => c.fn_ += 1,
            (false, true) => c.fp += 1,
            (false, false) => c.tn += 1,
        }
    }
    Ok(c)
}

/// `tp / (tp + fn)`
pub fn tp_rate(c: &ConfusionCounts) -> Result<f64> {
    let denom = c.tp + c.fn_;
    if denom == 0 {
        return Err(Error::UndefinedRate("tp + fn"));
    }
    Ok(c.tp as f64 / denom as f64)
}

/// `fp / (fp + tn)`
pub fn fp_rate(c: &ConfusionCounts) -> Result<f64> {
    let denom = c.fp + c.tn;
    if denom == 0 {
        return Err(Error::UndefinedRate("fp + tn"));
    }
    Ok(c.fp as f64 / denom as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RocCurve {
    /// `(fp_rate, tp_rate)` from `(0, 0)` to `(1, 1)`.
    pub points: Vec<(f64, f64)>,
    pub auc: f64,
}

impl RocCurve {
    /// Two-column comma-separated export with a header line.
    pub fn to_delimited(&self) -> String {
        let mut out = String::from("fp_rate,tp_rate\n");
        for (x, y) in &self.points {
            let _ = writeln!(out, "{x},{y}");
        }
        out
    }
}

fn class_totals<L: PartialEq>(
    labels: &[L],
    scores: &[f64],
    positive: &L,
) -> Result<(usize, usize)> {
    if labels.len() != scores.len() {
        return Err(Error::invalid(format!(
            "{} labels but {} scores",
            labels.len(),
            scores.len()
        )));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::invalid("scores contain NaN"));
    }
    let pos = labels.iter().filter(|l| *l == positive).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::invalid(
            "ROC needs both positive and negative labels",
        ));
    }
    Ok((pos, neg))
}

/// Threshold sweep over distinct scores in descending order. All instances
/// sharing a score enter together, so ties produce one diagonal segment.
/// AUC is the trapezoidal area under the points.
pub fn roc_curve<L: PartialEq>(labels: &[L], scores: &[f64], positive: &L) -> Result<RocCurve> {
    let (pos, neg) = class_totals(labels, scores, positive)?;
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut area2 = 0.0; // twice the area, in tp*fp units
    let mut i = 0;
    while i < order.len() {
        let score = scores[order[i]];
        let (prev_tp, prev_fp) = (tp, fp);
        while i < order.len() && scores[order[i]] == score {
            if labels[order[i]] == *positive {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        area2 += ((fp - prev_fp) * (tp + prev_tp)) as f64;
        points.push((fp as f64 / neg as f64, tp as f64 / pos as f64));
    }
    let auc = area2 / (2.0 * pos as f64 * neg as f64);
    Ok(RocCurve { points, auc })
}

/// Probability that a random positive outscores a random negative, ties
/// counting one half, by enumerating every pair.
pub fn auc_pairwise_oracle<L: PartialEq>(
    labels: &[L],
    scores: &[f64],
    positive: &L,
) -> Result<f64> {
    let (pos, neg) = class_totals(labels, scores, positive)?;
    let mut wins2 = 0u64;
    for (i, li) in labels.iter().enumerate() {
        if li != positive {
            continue;
        }
        for (j, lj) in labels.iter().enumerate() {
            if lj == positive {
                continue;
            }
            if scores[i] > scores[j] {
                wins2 += 2;
            } else if scores[i] == scores[j] {
                wins2 += 1;
            }
        }
    }
    Ok(wins2 as f64 / (2.0 * pos as f64 * neg as f64))
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Upper convex hull of `points` together with `(0, 0)` and `(1, 1)`, in
/// increasing fp-rate order. Collinear interior points are dropped.
pub fn upper_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut all: Vec<(f64, f64)> = points.to_vec();
    all.push((0.0, 0.0));
    all.push((1.0, 1.0));
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    all.dedup();
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(all.len());
    for p in all {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) >= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

pub fn roc_convex_hull(curve: &RocCurve) -> Vec<(f64, f64)> {
    upper_hull(&curve.points)
}

/// Trapezoidal area under a polyline given in increasing x order.
pub fn area_under(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
        .sum()
}
