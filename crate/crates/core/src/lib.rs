//! Cluster-based under-sampling with boosting (CUSBoost) for imbalanced
//! classification, together with the AdaBoost, RUSBoost and SMOTEBoost
//! comparators and a repeated stratified cross-validation harness scored by
//! ROC AUC.
//!
//! The crate is organised bottom-up:
//!
//! * [`dataset`] parses KEEL `.dat` and delimited files, summarises class
//!   imbalance, designates the minority class and builds stratified folds.
//! * [`kmeans`] standardises/one-hot encodes instances and runs Lloyd's
//!   algorithm with k-means++ seeding.
//! * [`sampling`] builds training subsets: cluster-based under-sampling,
//!   random under-sampling and SMOTE.
//! * [`tree`] is a weighted gain-ratio decision tree (C4.5 style, unpruned).
//! * [`boosting`] is the weighted-error AdaBoost loop with a pluggable
//!   per-round sampling strategy.
//! * [`metrics`] has confusion counts, ROC curves, AUC and the ROC convex hull.
//! * [`harness`] runs the `repeats x folds` protocol and formats result tables.
//!
//! All randomness flows from explicit 64-bit seeds through [`rng::Rng`], so
//! every result is a pure function of its inputs and seed.

pub mod boosting;
pub mod dataset;
pub mod error;
pub mod harness;
pub mod kmeans;
pub mod metrics;
pub mod rng;
pub mod sampling;
pub mod tree;

pub use boosting::{Algorithm, BoostConfig, EnsembleModel, RoundRecord, WeightVector};
pub use dataset::{Attribute, AttributeKind, BinaryView, Dataset, DatasetSummary, FoldPlan};
pub use error::{Error, Result};
pub use kmeans::{ClusterModel, FeatureEncoding, KMeansParams};
pub use metrics::{ConfusionCounts, RocCurve};
pub use sampling::{SamplePlan, SampleStrategy};
pub use tree::{TreeConfig, TreeModel, TreeNode};
