//! Training-subset construction for the boosting rounds.
//!
//! Under-sampling plans (CUS, RUS) keep every minority instance and a subset
//! of the majority; SMOTE keeps everything and adds synthetic minority rows.

use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeKind, BinaryView, Dataset};
use crate::error::{Error, Result};
use crate::kmeans::{squared_distance, ClusterModel, FeatureEncoding};
use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleStrategy {
    Cus,
    Rus,
    Smote,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
pub enum SampleParams {
    Cus {
        fraction: f64,
        cluster_sizes: Vec<usize>,
    },
    Rus {
        target_ratio: f64,
    },
    Smote {
        amount_percent: u32,
        neighbors: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SyntheticInstance {
    pub values: Vec<f64>,
    pub label: usize,
    /// Minority instance the row was interpolated from.
    pub base: usize,
    pub neighbor: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePlan {
    /// Indices into the parent dataset, ascending.
    pub kept_indices: Vec<usize>,
    pub synthetic: Vec<SyntheticInstance>,
    pub strategy: SampleStrategy,
    pub seed: u64,
    pub params: SampleParams,
}

/// Products such as `0.58 * 25` land a hair below the intended half; this
/// much slack lets them round up as the decimal arithmetic says they should.
const ROUNDING_SLACK: f64 = 1e-9;

fn round_half_up(x: f64) -> usize {
    (x + 0.5 + ROUNDING_SLACK).floor() as usize
}

/// Majority instances CUS keeps from a cluster of `size`: `fraction * size`
/// rounded half up, at least one for a non-empty cluster.
pub fn cus_kept_count(size: usize, fraction: f64) -> usize {
    if size == 0 {
        return 0;
    }
    round_half_up(fraction * size as f64).clamp(1, size)
}

/// Cluster-based under-sampling: from every cluster of the majority keep
/// [`cus_kept_count`] members drawn uniformly without replacement; keep all
/// minority instances. `clusters.assignment[j]` is the cluster of
/// `view.majority_indices[j]`.
pub fn cus_sample(
    view: &BinaryView,
    clusters: &ClusterModel,
    fraction: f64,
    seed: u64,
) -> Result<SamplePlan> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::config(format!("fraction {fraction} outside (0, 1]")));
    }
    if clusters.assignment.len() != view.majority_indices.len() {
        return Err(Error::invalid(format!(
            "cluster model covers {} instances, majority has {}",
            clusters.assignment.len(),
            view.majority_indices.len()
        )));
    }
    let mut rng = Rng::seeded(seed);
    let mut kept = view.minority_indices.clone();
    let groups = clusters.members();
    for group in &groups {
        let pool: Vec<usize> = group.iter().map(|&j| view.majority_indices[j]).collect();
        kept.extend(rng.choose_sorted(&pool, cus_kept_count(pool.len(), fraction)));
    }
    kept.sort_unstable();
    Ok(SamplePlan {
        kept_indices: kept,
        synthetic: Vec::new(),
        strategy: SampleStrategy::Cus,
        seed,
        params: SampleParams::Cus {
            fraction,
            cluster_sizes: groups.iter().map(Vec::len).collect(),
        },
    })
}

/// Majority instances RUS keeps: `target_ratio * minority` rounded half up,
/// capped at the majority size.
pub fn rus_kept_count(majority: usize, minority: usize, target_ratio: f64) -> usize {
    round_half_up(target_ratio * minority as f64).min(majority)
}

/// Random under-sampling of the majority to `target_ratio : 1`.
pub fn rus_sample(view: &BinaryView, target_ratio: f64, seed: u64) -> Result<SamplePlan> {
    if !(target_ratio.is_finite() && target_ratio >= 1.0) {
        return Err(Error::config(format!(
            "target ratio {target_ratio} must be a finite value >= 1"
        )));
    }
    let count = rus_kept_count(
        view.majority_indices.len(),
        view.minority_indices.len(),
        target_ratio,
    );
    let mut rng = Rng::seeded(seed);
    let mut kept = view.minority_indices.clone();
    kept.extend(rng.choose_sorted(&view.majority_indices, count));
    kept.sort_unstable();
    Ok(SamplePlan {
        kept_indices: kept,
        synthetic: Vec::new(),
        strategy: SampleStrategy::Rus,
        seed,
        params: SampleParams::Rus { target_ratio },
    })
}

/// SMOTE over the minority class: `amount_percent / 100` synthetic rows per
/// minority instance, each interpolated towards one of its `neighbors`
/// nearest minority neighbours (Euclidean over standardized numeric
/// attributes, ties to the lower index). Categorical values are copied from
/// the base instance.
pub fn smote_sample(
    ds: &Dataset,
    view: &BinaryView,
    amount_percent: u32,
    neighbors: usize,
    seed: u64,
) -> Result<SamplePlan> {
    smote_with_gap(ds, view, amount_percent, neighbors, seed, Rng::unit)
}

pub(crate) fn smote_with_gap(
    ds: &Dataset,
    view: &BinaryView,
    amount_percent: u32,
    neighbors: usize,
    seed: u64,
    mut gap: impl FnMut(&mut Rng) -> f64,
) -> Result<SamplePlan> {
    if amount_percent == 0 || !amount_percent.is_multiple_of(100) {
        return Err(Error::config(format!(
            "SMOTE amount {amount_percent}% is not a positive multiple of 100"
        )));
    }
    let minority = &view.minority_indices;
    if minority.len() < 2 {
        return Err(Error::invalid("SMOTE needs at least 2 minority instances"));
    }
    if neighbors < 1 || neighbors > minority.len() - 1 {
        return Err(Error::config(format!(
            "SMOTE neighbours {neighbors} outside [1, {}]",
            minority.len() - 1
        )));
    }
    let encoding = FeatureEncoding::numeric_only(ds, minority);
    let encoded: Vec<Vec<f64>> = minority
        .iter()
        .map(|&i| encoding.apply(&ds.rows[i]))
        .collect();
    let nearest: Vec<Vec<usize>> = (0..minority.len())
        .map(|a| {
            let mut others: Vec<(f64, usize)> = (0..minority.len())
                .filter(|&b| b != a)
                .map(|b| (squared_distance(&encoded[a], &encoded[b]), b))
                .collect();
            others.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            others.truncate(neighbors);
            others.into_iter().map(|(_, b)| minority[b]).collect()
        })
        .collect();

    let per_instance = (amount_percent / 100) as usize;
    let mut rng = Rng::seeded(seed);
    let mut synthetic = Vec::with_capacity(per_instance * minority.len());
    for (a, &base) in minority.iter().enumerate() {
        for _ in 0..per_instance {
            let neighbor = nearest[a][rng.below(neighbors)];
            let u = gap(&mut rng);
            let p = &ds.rows[base];
            let q = &ds.rows[neighbor];
            let values = ds
                .attributes
                .iter()
                .enumerate()
                .map(|(j, attr)| match attr.kind {
                    AttributeKind::Numeric { .. } => {
                        let (lo, hi) = if p[j] <= q[j] {
                            (p[j], q[j])
                        } else {
                            (q[j], p[j])
                        };
                        (p[j] + u * (q[j] - p[j])).clamp(lo, hi)
                    }
                    AttributeKind::Categorical { .. } => p[j],
                })
                .collect();
            synthetic.push(SyntheticInstance {
                values,
                label: view.positive_class,
                base,
                neighbor,
            });
        }
    }
    Ok(SamplePlan {
        kept_indices: (0..ds.len()).collect(),
        synthetic,
        strategy: SampleStrategy::Smote,
        seed,
        params: SampleParams::Smote {
            amount_percent,
            neighbors,
        },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Materialized {
    pub dataset: Dataset,
    /// Source row in the parent dataset for every new row; `None` marks a
    /// synthetic row.
    pub provenance: Vec<Option<usize>>,
}

/// Builds the sampled dataset: kept rows in plan order, then synthetic rows.
pub fn materialize(ds: &Dataset, plan: &SamplePlan) -> Materialized {
    let mut dataset = ds.subset(&plan.kept_indices);
    let mut provenance: Vec<Option<usize>> = plan.kept_indices.iter().map(|&i| Some(i)).collect();
    for s in &plan.synthetic {
        dataset.rows.push(s.values.clone());
        dataset.labels.push(s.label);
        provenance.push(None);
    }
    Materialized {
        dataset,
        provenance,
    }
}
