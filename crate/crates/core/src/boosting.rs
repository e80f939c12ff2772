//! AdaBoost with a per-round sampling step.
//!
//! Every round draws a training subset according to the algorithm
//! (none, random under-sampling, SMOTE or cluster-based under-sampling),
//! grows a tree on it, and measures the tree's weighted error on the full
//! training set. Rounds with error at or above one half are abandoned and
//! redrawn. Accepted rounds scale the weights of correctly classified
//! instances by `error / (1 - error)`, renormalize, and vote with weight
//! `ln((1 - error) / error)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dataset::{Attribute, BinaryView, Dataset};
use crate::error::{Error, Result};
use crate::kmeans::{encode, kmeans_fit, select_elbow, sweep_k, ClusterModel, KMeansParams};
use crate::rng::derive_seed;
use crate::sampling::{cus_sample, materialize, rus_sample, smote_sample, SamplePlan};
use crate::tree::{fit_tree, TreeConfig, TreeModel};

pub const FORMAT_NAME: &str = "cusboost-ensemble";
pub const FORMAT_VERSION: u32 = 1;

/// Stand-in error for a perfect round, so its vote stays finite.
pub const ZERO_ERROR_EPSILON: f64 = 1e-10;

/// Cluster counts tried when none is configured.
pub const DEFAULT_CLUSTER_CANDIDATES: [usize; 5] = [2, 3, 5, 8, 13];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    AdaBoost,
    RusBoost,
    SmoteBoost,
    CusBoost,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::AdaBoost,
        Algorithm::RusBoost,
        Algorithm::SmoteBoost,
        Algorithm::CusBoost,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::AdaBoost => "adaboost",
            Algorithm::RusBoost => "rusboost",
            Algorithm::SmoteBoost => "smoteboost",
            Algorithm::CusBoost => "cusboost",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::config(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn uniform(d: usize) -> Self {
        WeightVector(vec![1.0 / d as f64; d])
    }

    pub fn from_vec(weights: Vec<f64>) -> Self {
        WeightVector(weights)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoostConfig {
    pub algorithm: Algorithm,
    pub rounds: usize,
    pub max_retries_per_round: usize,
    /// CUSBoost cluster count; `None` picks one by inertia elbow over
    /// `cluster_candidates`.
    pub num_clusters: Option<usize>,
    pub cluster_candidates: Vec<usize>,
    /// Share of every cluster CUSBoost keeps.
    pub fraction: f64,
    /// RUSBoost majority:minority ratio after sampling.
    pub target_ratio: f64,
    pub smote_amount: u32,
    pub smote_neighbors: usize,
    pub kmeans: KMeansParams,
    pub tree: TreeConfig,
    pub seed: u64,
}

impl Default for BoostConfig {
    fn default() -> Self {
        BoostConfig {
            algorithm: Algorithm::CusBoost,
            rounds: 20,
            max_retries_per_round: 10,
            num_clusters: None,
            cluster_candidates: DEFAULT_CLUSTER_CANDIDATES.to_vec(),
            fraction: 0.5,
            target_ratio: 1.0,
            smote_amount: 200,
            smote_neighbors: 5,
            kmeans: KMeansParams::default(),
            tree: TreeConfig::default(),
            seed: 0,
        }
    }
}

impl BoostConfig {
    pub fn for_algorithm(algorithm: Algorithm) -> Self {
        BoostConfig {
            algorithm,
            ..BoostConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounds < 1 {
            return Err(Error::config("rounds must be at least 1"));
        }
        if self.max_retries_per_round < 1 {
            return Err(Error::config("max retries per round must be at least 1"));
        }
        if self.num_clusters == Some(0) {
            return Err(Error::config("number of clusters must be at least 1"));
        }
        if self.cluster_candidates.contains(&0) {
            return Err(Error::config("cluster candidates must be at least 1"));
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            return Err(Error::config(format!(
                "fraction {} outside (0, 1]",
                self.fraction
            )));
        }
        if !(self.target_ratio.is_finite() && self.target_ratio >= 1.0) {
            return Err(Error::config(format!(
                "target ratio {} must be >= 1",
                self.target_ratio
            )));
        }
        if self.smote_amount == 0 || !self.smote_amount.is_multiple_of(100) {
            return Err(Error::config(format!(
                "SMOTE amount {} is not a positive multiple of 100",
                self.smote_amount
            )));
        }
        if self.smote_neighbors < 1 {
            return Err(Error::config("SMOTE neighbours must be at least 1"));
        }
        if self.kmeans.tol.is_nan() || self.kmeans.tol < 0.0 {
            return Err(Error::config("k-means tolerance must be >= 0"));
        }
        self.tree.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round_index: usize,
    /// Seed of the accepted attempt's sample.
    pub plan_seed: u64,
    pub sample_plan: Option<SamplePlan>,
    pub tree: TreeModel,
    pub tree_text: String,
    pub error: f64,
    pub vote_weight: f64,
    /// Abandoned attempts before this round was accepted.
    pub retries: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleModel {
    pub format: String,
    pub version: u32,
    pub algorithm: Algorithm,
    pub attributes: Vec<Attribute>,
    pub classes: Vec<String>,
    pub positive_class: usize,
    pub config: BoostConfig,
    /// Cluster count actually used by CUSBoost.
    pub num_clusters: Option<usize>,
    pub rounds: Vec<RoundRecord>,
    /// Attempts abandoned in the round that ended training early.
    pub trailing_retries: usize,
    pub stopped_early: bool,
}

/// Eq. 1 style weighted error: the weight of misclassified instances.
pub fn compute_error(tree: &TreeModel, ds: &Dataset, weights: &WeightVector) -> Result<f64> {
    let correct = correctness(tree, ds)?;
    Ok(weighted_error(&correct, weights.as_slice()))
}

fn correctness(tree: &TreeModel, ds: &Dataset) -> Result<Vec<bool>> {
    ds.rows
        .iter()
        .zip(&ds.labels)
        .map(|(row, &label)| Ok(tree.predict(row)? == label))
        .collect()
}

fn weighted_error(correct: &[bool], weights: &[f64]) -> f64 {
    correct
        .iter()
        .zip(weights)
        .filter(|(ok, _)| !**ok)
        .fold(0.0, |acc, (_, w)| acc + w)
}

fn reweight(weights: &[f64], correct: &[bool], error: f64) -> Vec<f64> {
    let factor = error / (1.0 - error);
    let old_sum: f64 = weights.iter().sum();
    let scaled: Vec<f64> = weights
        .iter()
        .zip(correct)
        .map(|(&w, &ok)| if ok { w * factor } else { w })
        .collect();
    let new_sum: f64 = scaled.iter().sum();
    scaled.into_iter().map(|w| w * old_sum / new_sum).collect()
}

/// Scales the weights of correctly classified instances by
/// `error / (1 - error)` and renormalizes to the previous total.
pub fn update_weights(
    weights: &WeightVector,
    tree: &TreeModel,
    ds: &Dataset,
    error: f64,
) -> Result<WeightVector> {
    if !(error > 0.0 && error < 0.5) {
        return Err(Error::invalid(format!(
            "weight update needs 0 < error < 0.5, got {error}"
        )));
    }
    let correct = correctness(tree, ds)?;
    Ok(WeightVector(reweight(weights.as_slice(), &correct, error)))
}

pub fn vote_weight(error: f64) -> f64 {
    let e = error.max(ZERO_ERROR_EPSILON);
    ((1.0 - e) / e).ln()
}

/// Elbow choice of the CUSBoost cluster count on the majority rows of `ds`.
pub fn choose_num_clusters(
    ds: &Dataset,
    view: &BinaryView,
    candidates: &[usize],
    seed: u64,
    params: KMeansParams,
) -> Result<usize> {
    let majority = view.majority_indices.len();
    let usable: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&k| k >= 1 && k <= majority)
        .collect();
    if usable.is_empty() {
        return Ok(1);
    }
    let (_, matrix) = encode(ds, &view.majority_indices)?;
    let sweep = sweep_k(&matrix, &usable, seed, params)?;
    Ok(select_elbow(&sweep).unwrap_or(1))
}

enum Sampler {
    Identity,
    Rus {
        target_ratio: f64,
    },
    Smote {
        amount: u32,
        neighbors: usize,
    },
    Cus {
        clusters: ClusterModel,
        fraction: f64,
    },
}

impl Sampler {
    fn draw(&self, ds: &Dataset, view: &BinaryView, seed: u64) -> Result<Option<SamplePlan>> {
        Ok(match self {
            Sampler::Identity => None,
            Sampler::Rus { target_ratio } => Some(rus_sample(view, *target_ratio, seed)?),
            Sampler::Smote { amount, neighbors } => {
                Some(smote_sample(ds, view, *amount, *neighbors, seed)?)
            }
            Sampler::Cus { clusters, fraction } => {
                Some(cus_sample(view, clusters, *fraction, seed)?)
            }
        })
    }

    fn is_deterministic(&self) -> bool {
        matches!(self, Sampler::Identity)
    }
}

/// Trains an ensemble on `ds` for the positive class designated by `view`.
/// Multi-class datasets are reduced to positive-versus-rest first.
pub fn train(ds: &Dataset, view: &BinaryView, cfg: &BoostConfig) -> Result<EnsembleModel> {
    cfg.validate()?;
    let (binary, positive_class) = view.to_binary(ds);
    let d = binary.len();

    let mut num_clusters = None;
    let sampler = match cfg.algorithm {
        Algorithm::AdaBoost => Sampler::Identity,
        Algorithm::RusBoost => Sampler::Rus {
            target_ratio: cfg.target_ratio,
        },
        Algorithm::SmoteBoost => {
            let minority = view.minority_indices.len();
            if minority < 2 {
                return Err(Error::invalid(
                    "SMOTEBoost needs at least 2 minority instances",
                ));
            }
            Sampler::Smote {
                amount: cfg.smote_amount,
                neighbors: cfg.smote_neighbors.min(minority - 1),
            }
        }
        Algorithm::CusBoost => {
            let k = match cfg.num_clusters {
                Some(k) => k,
                None => choose_num_clusters(
                    &binary,
                    view,
                    &cfg.cluster_candidates,
                    derive_seed(cfg.seed, "cluster-sweep", 0),
                    cfg.kmeans,
                )?,
            };
            if k > view.majority_indices.len() {
                return Err(Error::config(format!(
                    "{k} clusters for {} majority instances",
                    view.majority_indices.len()
                )));
            }
            let (_, matrix) = encode(&binary, &view.majority_indices)?;
            let clusters = kmeans_fit(&matrix, k, derive_seed(cfg.seed, "kmeans", 0), cfg.kmeans)?;
            num_clusters = Some(k);
            Sampler::Cus {
                clusters,
                fraction: cfg.fraction,
            }
        }
    };

    let mut weights = WeightVector::uniform(d);
    let mut rounds = Vec::with_capacity(cfg.rounds);
    let mut stopped_early = false;
    let mut trailing_retries = 0;
    for round_index in 0..cfg.rounds {
        let round_seed = derive_seed(cfg.seed, "round", round_index as u64);
        let mut accepted = None;
        let mut retries = 0;
        for attempt in 0..=cfg.max_retries_per_round {
            let plan_seed = derive_seed(round_seed, "attempt", attempt as u64);
            let plan = sampler.draw(&binary, view, plan_seed)?;
            let tree = match &plan {
                None => fit_tree(&binary, weights.as_slice(), &cfg.tree)?,
                Some(plan) => {
                    let sample = materialize(&binary, plan);
                    let synthetic_weight = 1.0 / sample.dataset.len() as f64;
                    let sample_weights: Vec<f64> = sample
                        .provenance
                        .iter()
                        .map(|p| p.map_or(synthetic_weight, |i| weights.as_slice()[i]))
                        .collect();
                    fit_tree(&sample.dataset, &sample_weights, &cfg.tree)?
                }
            };
            let correct = correctness(&tree, &binary)?;
            let error = weighted_error(&correct, weights.as_slice());
            if error < 0.5 {
                accepted = Some((plan_seed, plan, tree, correct, error));
                break;
            }
            retries += 1;
            if sampler.is_deterministic() {
                break;
            }
        }
        let Some((plan_seed, sample_plan, tree, correct, error)) = accepted else {
            if rounds.is_empty() {
                return Err(Error::Training(format!(
                    "no base model reached error below 0.5 in {retries} attempts"
                )));
            }
            log::info!(
                "round {round_index}: no acceptable model after {retries} attempts, stopping early"
            );
            stopped_early = true;
            trailing_retries = retries;
            break;
        };
        let vote = vote_weight(error);
        weights = if error > 0.0 {
            WeightVector(reweight(weights.as_slice(), &correct, error))
        } else {
            WeightVector::uniform(d)
        };
        let tree_text = tree.to_text(&binary.attributes, &binary.classes);
        rounds.push(RoundRecord {
            round_index,
            plan_seed,
            sample_plan,
            tree,
            tree_text,
            error,
            vote_weight: vote,
            retries,
        });
    }

    Ok(EnsembleModel {
        format: FORMAT_NAME.to_string(),
        version: FORMAT_VERSION,
        algorithm: cfg.algorithm,
        attributes: binary.attributes.clone(),
        classes: binary.classes.clone(),
        positive_class,
        config: cfg.clone(),
        num_clusters,
        rounds,
        trailing_retries,
        stopped_early,
    })
}

impl EnsembleModel {
    pub fn positive_label(&self) -> &str {
        &self.classes[self.positive_class]
    }

    pub fn total_retries(&self) -> usize {
        self.rounds.iter().map(|r| r.retries).sum::<usize>() + self.trailing_retries
    }

    /// Accumulated vote weight per class.
    pub fn votes(&self, instance: &[f64]) -> Result<Vec<f64>> {
        if instance.len() != self.attributes.len() {
            return Err(Error::invalid(format!(
                "instance has {} values, model expects {}",
                instance.len(),
                self.attributes.len()
            )));
        }
        let mut votes = vec![0.0; self.classes.len()];
        for round in &self.rounds {
            votes[round.tree.predict(instance)?] += round.vote_weight;
        }
        Ok(votes)
    }

    /// Class index with the largest vote (ties go to the positive class)
    /// and the positive share of the total vote.
    pub fn predict_index(&self, instance: &[f64]) -> Result<(usize, f64)> {
        let votes = self.votes(instance)?;
        let max = votes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let label = if votes[self.positive_class] >= max {
            self.positive_class
        } else {
            votes.iter().position(|&v| v == max).unwrap()
        };
        let total: f64 = votes.iter().sum();
        let score = if total > 0.0 {
            votes[self.positive_class] / total
        } else {
            0.0
        };
        Ok((label, score))
    }

    pub fn predict(&self, instance: &[f64]) -> Result<(String, f64)> {
        let (label, score) = self.predict_index(instance)?;
        Ok((self.classes[label].clone(), score))
    }

    /// Positive scores for every row of `ds`.
    pub fn scores(&self, ds: &Dataset) -> Result<Vec<f64>> {
        if !self.attributes.is_empty() && ds.attributes != self.attributes {
            return Err(Error::invalid(
                "dataset schema differs from the training schema",
            ));
        }
        ds.rows
            .iter()
            .map(|r| Ok(self.predict_index(r)?.1))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: EnsembleModel = serde_json::from_str(text)?;
        if model.format != FORMAT_NAME {
            return Err(Error::invalid(format!(
                "not an ensemble file (format `{}`)",
                model.format
            )));
        }
        if model.version != FORMAT_VERSION {
            return Err(Error::invalid(format!(
                "unsupported ensemble version {}",
                model.version
            )));
        }
        Ok(model)
    }
}
