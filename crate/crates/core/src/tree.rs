//! Weighted gain-ratio decision trees.
//!
//! Induction follows C4.5's split criterion on weighted instances: numeric
//! attributes are cut at midpoints between consecutive distinct values,
//! categorical attributes split multiway over the categories present at the
//! node, and the candidate with the highest gain ratio wins. Trees are not
//! pruned.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dataset::{Attribute, AttributeKind, Dataset};
use crate::error::{Error, Result};

/// Candidates whose split information is below this are skipped.
pub const SPLIT_INFO_FLOOR: f64 = 1e-12;

/// Branch weights within this of the minimum leaf weight count as reaching
/// it, so sums that are exact on paper are not lost to rounding.
pub const WEIGHT_SLACK: f64 = 1e-12;

/// A later candidate must beat the incumbent by more than this to replace it.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeConfig {
    /// `None` grows until another stopping rule applies.
    pub max_depth: Option<usize>,
    /// Minimum weight of a branch, measured on weights normalized to sum to
    /// one. `None` means `2 / n` for a training set of `n` rows.
    pub min_leaf_weight: Option<f64>,
    pub min_split_gain_ratio: f64,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            max_depth: None,
            min_leaf_weight: None,
            min_split_gain_ratio: 1e-4,
        }
    }
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(w) = self.min_leaf_weight {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::config(format!("min_leaf_weight {w} must be >= 0")));
            }
        }
        if self.min_split_gain_ratio.is_nan() || self.min_split_gain_ratio < 0.0 {
            return Err(Error::config("min_split_gain_ratio must be >= 0"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "test", rename_all = "snake_case")]
pub enum SplitTest {
    /// Two children: `value <= threshold` goes left (child 0).
    Threshold { threshold: f64 },
    /// Child `i` takes category `branches[i]`; any other category goes to
    /// `fallback`, the child with the largest training weight.
    Categories {
        branches: Vec<usize>,
        fallback: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf {
        class: usize,
        /// Training weight per class reaching the leaf.
        distribution: Vec<f64>,
    },
    Split {
        attribute: usize,
        test: SplitTest,
        children: Vec<TreeNode>,
        distribution: Vec<f64>,
    },
}

impl TreeNode {
    pub fn distribution(&self) -> &[f64] {
        match self {
            TreeNode::Leaf { distribution, .. } | TreeNode::Split { distribution, .. } => {
                distribution
            }
        }
    }

    /// Child index an instance is routed to at a split node.
    fn route(&self, instance: &[f64]) -> Option<usize> {
        let TreeNode::Split {
            attribute, test, ..
        } = self
        else {
            return None;
        };
        let value = instance[*attribute];
        Some(match test {
            SplitTest::Threshold { threshold } => usize::from(value > *threshold),
            SplitTest::Categories { branches, fallback } => branches
                .iter()
                .position(|&c| c as f64 == value)
                .unwrap_or(*fallback),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeModel {
    pub num_attributes: usize,
    pub num_classes: usize,
    pub root: TreeNode,
}

/// Gain-ratio arithmetic for one candidate split.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub attribute: usize,
    pub test: SplitTest,
    pub gain: f64,
    pub split_info: f64,
    pub gain_ratio: f64,
}

fn entropy(distribution: &[f64]) -> f64 {
    let total: f64 = distribution.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    distribution
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| {
            let p = w / total;
            -p * p.log2()
        })
        .sum()
}

/// Information gain and split information of partitioning `parent` into
/// `branches` (class-weight distributions).
fn score(parent: &[f64], branches: &[Vec<f64>]) -> (f64, f64) {
    let total: f64 = parent.iter().sum();
    let mut remainder = 0.0;
    let mut split_info = 0.0;
    for branch in branches {
        let w: f64 = branch.iter().sum();
        if w <= 0.0 {
            continue;
        }
        let p = w / total;
        remainder += p * entropy(branch);
        split_info -= p * p.log2();
    }
    (entropy(parent) - remainder, split_info)
}

struct Builder<'a> {
    ds: &'a Dataset,
    weights: Vec<f64>,
    num_classes: usize,
    min_leaf: f64,
    cfg: &'a TreeConfig,
}

impl Builder<'_> {
    fn heavy(&self, weight: f64) -> bool {
        weight + WEIGHT_SLACK >= self.min_leaf
    }

    fn distribution(&self, rows: &[usize]) -> Vec<f64> {
        let mut dist = vec![0.0; self.num_classes];
        for &r in rows {
            dist[self.ds.labels[r]] += self.weights[r];
        }
        dist
    }

    /// Every admissible split of `rows`, attributes ascending and thresholds
    /// ascending within an attribute.
    fn candidates(&self, rows: &[usize], parent: &[f64]) -> Vec<Candidate> {
        let mut out = Vec::new();
        for (attribute, attr) in self.ds.attributes.iter().enumerate() {
            match &attr.kind {
                AttributeKind::Numeric { .. } => {
                    self.numeric_candidates(rows, parent, attribute, &mut out)
                }
                AttributeKind::Categorical { categories } => {
                    self.categorical_candidate(rows, parent, attribute, categories.len(), &mut out)
                }
            }
        }
        out
    }

    fn numeric_candidates(
        &self,
        rows: &[usize],
        parent: &[f64],
        attribute: usize,
        out: &mut Vec<Candidate>,
    ) {
        let mut sorted: Vec<(f64, usize)> = rows
            .iter()
            .map(|&r| (self.ds.rows[r][attribute], r))
            .collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut left = vec![0.0; self.num_classes];
        for i in 0..sorted.len().saturating_sub(1) {
            let (value, row) = sorted[i];
            left[self.ds.labels[row]] += self.weights[row];
            let next = sorted[i + 1].0;
            if next <= value {
                continue;
            }
            let right: Vec<f64> = parent
                .iter()
                .zip(&left)
                .map(|(p, l)| (p - l).max(0.0))
                .collect();
            let (lw, rw): (f64, f64) = (left.iter().sum(), right.iter().sum());
            if !self.heavy(lw) || !self.heavy(rw) {
                continue;
            }
            let (gain, split_info) = score(parent, &[left.clone(), right]);
            if split_info < SPLIT_INFO_FLOOR {
                continue;
            }
            let mut threshold = value + (next - value) / 2.0;
            if threshold >= next {
                threshold = value;
            }
            out.push(Candidate {
                attribute,
                test: SplitTest::Threshold { threshold },
                gain,
                split_info,
                gain_ratio: gain / split_info,
            });
        }
    }

    fn categorical_candidate(
        &self,
        rows: &[usize],
        parent: &[f64],
        attribute: usize,
        num_categories: usize,
        out: &mut Vec<Candidate>,
    ) {
        let mut counts = vec![0usize; num_categories];
        let mut dists = vec![vec![0.0; self.num_classes]; num_categories];
        for &r in rows {
            let c = self.ds.rows[r][attribute] as usize;
            counts[c] += 1;
            dists[c][self.ds.labels[r]] += self.weights[r];
        }
        let branches: Vec<usize> = (0..num_categories).filter(|&c| counts[c] > 0).collect();
        if branches.len() < 2 {
            return;
        }
        let branch_dists: Vec<Vec<f64>> = branches.iter().map(|&c| dists[c].clone()).collect();
        let heavy = branch_dists
            .iter()
            .filter(|d| self.heavy(d.iter().sum()))
            .count();
        if heavy < 2 {
            return;
        }
        let (gain, split_info) = score(parent, &branch_dists);
        if split_info < SPLIT_INFO_FLOOR {
            return;
        }
        let fallback = argmax(branch_dists.iter().map(|d| d.iter().sum::<f64>()));
        out.push(Candidate {
            attribute,
            test: SplitTest::Categories { branches, fallback },
            gain,
            split_info,
            gain_ratio: gain / split_info,
        });
    }

    fn build(&self, rows: Vec<usize>, depth: usize, parent_class: usize) -> TreeNode {
        let distribution = self.distribution(&rows);
        let total: f64 = distribution.iter().sum();
        let class = if total > 0.0 {
            argmax(distribution.iter().copied())
        } else {
            parent_class
        };
        let first_label = self.ds.labels[rows[0]];
        let pure = rows.iter().all(|&r| self.ds.labels[r] == first_label);
        let at_depth_limit = self.cfg.max_depth.is_some_and(|d| depth >= d);
        if pure || at_depth_limit || total + WEIGHT_SLACK < 2.0 * self.min_leaf || rows.len() < 2 {
            return TreeNode::Leaf {
                class,
                distribution,
            };
        }
        let best = best_candidate(self.candidates(&rows, &distribution));
        let Some(best) = best.filter(|c| c.gain_ratio >= self.cfg.min_split_gain_ratio) else {
            return TreeNode::Leaf {
                class,
                distribution,
            };
        };
        let probe = TreeNode::Split {
            attribute: best.attribute,
            test: best.test.clone(),
            children: Vec::new(),
            distribution: Vec::new(),
        };
        let arity = match &best.test {
            SplitTest::Threshold { .. } => 2,
            SplitTest::Categories { branches, .. } => branches.len(),
        };
        let mut parts = vec![Vec::new(); arity];
        for r in rows {
            let child = probe.route(&self.ds.rows[r]).unwrap();
            parts[child].push(r);
        }
        let children = parts
            .into_iter()
            .map(|part| {
                if part.is_empty() {
                    TreeNode::Leaf {
                        class,
                        distribution: vec![0.0; self.num_classes],
                    }
                } else {
                    self.build(part, depth + 1, class)
                }
            })
            .collect();
        TreeNode::Split {
            attribute: best.attribute,
            test: best.test,
            children,
            distribution,
        }
    }
}

/// Index of the largest value, ties to the lowest index.
fn argmax(values: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, v) in values.enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    best.0
}

/// Highest gain ratio; earlier candidates win ties.
pub fn best_candidate(candidates: Vec<Candidate>) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    for c in candidates {
        if best
            .as_ref()
            .is_none_or(|b| c.gain_ratio > b.gain_ratio + TIE_TOLERANCE)
        {
            best = Some(c);
        }
    }
    best
}

fn normalized_weights(ds: &Dataset, weights: &[f64]) -> Result<Vec<f64>> {
    if ds.is_empty() {
        return Err(Error::invalid("cannot fit a tree on an empty dataset"));
    }
    if weights.len() != ds.len() {
        return Err(Error::invalid(format!(
            "{} weights for {} instances",
            weights.len(),
            ds.len()
        )));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::invalid("weights must be finite and non-negative"));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::invalid("all instance weights are zero"));
    }
    Ok(weights.iter().map(|w| w / total).collect())
}

fn builder<'a>(ds: &'a Dataset, weights: &[f64], cfg: &'a TreeConfig) -> Result<Builder<'a>> {
    cfg.validate()?;
    let weights = normalized_weights(ds, weights)?;
    Ok(Builder {
        ds,
        weights,
        num_classes: ds.classes.len(),
        min_leaf: cfg.min_leaf_weight.unwrap_or(2.0 / ds.len() as f64),
        cfg,
    })
}

/// All admissible root splits of `ds` under `weights`, with their gain
/// arithmetic.
pub fn root_candidates(ds: &Dataset, weights: &[f64], cfg: &TreeConfig) -> Result<Vec<Candidate>> {
    let b = builder(ds, weights, cfg)?;
    let rows: Vec<usize> = (0..ds.len()).collect();
    let parent = b.distribution(&rows);
    Ok(b.candidates(&rows, &parent))
}

/// Grows a tree on `ds` with per-instance `weights`. Weights are normalized
/// internally, so scaling them all by a constant leaves the tree unchanged.
pub fn fit_tree(ds: &Dataset, weights: &[f64], cfg: &TreeConfig) -> Result<TreeModel> {
    let b = builder(ds, weights, cfg)?;
    let root = b.build((0..ds.len()).collect(), 0, 0);
    Ok(TreeModel {
        num_attributes: ds.num_features(),
        num_classes: ds.classes.len(),
        root,
    })
}

impl TreeModel {
    /// The leaf an instance reaches.
    pub fn leaf(&self, instance: &[f64]) -> Result<&TreeNode> {
        if instance.len() != self.num_attributes {
            return Err(Error::invalid(format!(
                "instance has {} values, tree expects {}",
                instance.len(),
                self.num_attributes
            )));
        }
        let mut node = &self.root;
        while let TreeNode::Split { children, .. } = node {
            node = &children[node.route(instance).unwrap()];
        }
        Ok(node)
    }

    pub fn predict(&self, instance: &[f64]) -> Result<usize> {
        match self.leaf(instance)? {
            TreeNode::Leaf { class, .. } => Ok(*class),
            TreeNode::Split { .. } => unreachable!(),
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(node: &TreeNode) -> usize {
            match node {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { children, .. } => {
                    1 + children.iter().map(walk).max().unwrap_or(0)
                }
            }
        }
        walk(&self.root)
    }

    pub fn num_leaves(&self) -> usize {
        fn walk(node: &TreeNode) -> usize {
            match node {
                TreeNode::Leaf { .. } => 1,
                TreeNode::Split { children, .. } => children.iter().map(walk).sum(),
            }
        }
        walk(&self.root)
    }

    /// Indented text rendering with attribute names, tests and leaf class
    /// weights.
    pub fn to_text(&self, attributes: &[Attribute], classes: &[String]) -> String {
        fn leaf_text(class: usize, distribution: &[f64], classes: &[String]) -> String {
            let parts: Vec<String> = classes
                .iter()
                .zip(distribution)
                .map(|(c, w)| format!("{c} {w:.6}"))
                .collect();
            format!("{} ({})", classes[class], parts.join(", "))
        }
        fn walk(
            node: &TreeNode,
            depth: usize,
            attrs: &[Attribute],
            classes: &[String],
            out: &mut String,
        ) {
            let TreeNode::Split {
                attribute,
                test,
                children,
                ..
            } = node
            else {
                return;
            };
            let name = &attrs[*attribute].name;
            for (i, child) in children.iter().enumerate() {
                let condition = match test {
                    SplitTest::Threshold { threshold } => {
                        format!("{name} {} {threshold}", if i == 0 { "<=" } else { ">" })
                    }
                    SplitTest::Categories { branches, .. } => {
                        let label = match &attrs[*attribute].kind {
                            AttributeKind::Categorical { categories } => {
                                categories[branches[i]].clone()
                            }
                            AttributeKind::Numeric { .. } => branches[i].to_string(),
                        };
                        format!("{name} = {label}")
                    }
                };
                out.push_str(&"|   ".repeat(depth));
                match child {
                    TreeNode::Leaf {
                        class,
                        distribution,
                    } => {
                        let _ = writeln!(
                            out,
                            "{condition}: {}",
                            leaf_text(*class, distribution, classes)
                        );
                    }
                    TreeNode::Split { .. } => {
                        let _ = writeln!(out, "{condition}");
                        walk(child, depth + 1, attrs, classes, out);
                    }
                }
            }
        }
        let mut out = String::new();
        match &self.root {
            TreeNode::Leaf {
                class,
                distribution,
            } => {
                let _ = writeln!(out, ": {}", leaf_text(*class, distribution, classes));
            }
            root => walk(root, 0, attributes, classes, &mut out),
        }
        out
    }
}

/// Hard label and the weight fraction of `positive` at the reached leaf.
pub fn predict_tree(model: &TreeModel, instance: &[f64], positive: usize) -> Result<(usize, f64)> {
    match model.leaf(instance)? {
        TreeNode::Leaf {
            class,
            distribution,
        } => {
            let total: f64 = distribution.iter().sum();
            let score = if total > 0.0 {
                distribution[positive] / total
            } else if *class == positive {
                1.0
            } else {
                0.0
            };
            Ok((*class, score))
        }
        TreeNode::Split { .. } => unreachable!(),
    }
}

/// `1 - sum(w_i * misclassified_i) / sum(w_i)`.
pub fn weighted_accuracy(model: &TreeModel, ds: &Dataset, weights: &[f64]) -> Result<f64> {
    let weights = normalized_weights(ds, weights)?;
    let mut error = 0.0;
    for ((row, &label), w) in ds.rows.iter().zip(&ds.labels).zip(&weights) {
        if model.predict(row)? != label {
            error += w;
        }
    }
    Ok(1.0 - error)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(n: usize) -> Vec<f64> {
        vec![1.0 / n as f64; n]
    }

    pub(crate) fn weather() -> Dataset {
        let outlook = ["sunny", "overcast", "rain"];
        let temp = ["hot", "mild", "cool"];
        let humidity = ["high", "normal"];
        let windy = ["false", "true"];
        #[rustfmt::skip]
        let table: [(usize, usize, usize, usize, usize); 14] = [
            (0, 0, 0, 0, 1), (0, 0, 0, 1, 1), (1, 0, 0, 0, 0), (2, 1, 0, 0, 0),
            (2, 2, 1, 0, 0), (2, 2, 1, 1, 1), (1, 2, 1, 1, 0), (0, 1, 0, 0, 1),
            (0, 2, 1, 0, 0), (2, 1, 1, 0, 0), (0, 1, 1, 1, 0), (1, 1, 0, 1, 0),
            (1, 0, 1, 0, 0), (2, 1, 0, 1, 1),
        ];
        Dataset::new(
            "weather",
            vec![
                Attribute::categorical("outlook", outlook),
                Attribute::categorical("temperature", temp),
                Attribute::categorical("humidity", humidity),
                Attribute::categorical("windy", windy),
            ],
            "play",
            vec!["yes".into(), "no".into()],
            table
                .iter()
                .map(|r| vec![r.0 as f64, r.1 as f64, r.2 as f64, r.3 as f64])
                .collect(),
            table.iter().map(|r| r.4).collect(),
        )
        .unwrap()
    }

    fn line(values: &[f64], labels: &[usize]) -> Dataset {
        Dataset::new(
            "line",
            vec![Attribute::numeric("x")],
            "class",
            vec!["neg".into(), "pos".into()],
            values.iter().map(|&v| vec![v]).collect(),
            labels.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn weather_outlook_gain_ratio() {
        let ds = weather();
        let cands = root_candidates(&ds, &uniform(14), &TreeConfig::default()).unwrap();
        let outlook = cands.iter().find(|c| c.attribute == 0).unwrap();
        // hand arithmetic: H(9,5) = 0.94029, remainder = 5/14*0.97095*2 = 0.69354
        assert!((outlook.gain - 0.2467).abs() < 5e-5, "{}", outlook.gain);
        assert!((outlook.split_info - 1.5774).abs() < 5e-5);
        assert!((outlook.gain_ratio - 0.1564).abs() < 5e-5);
        let tree = fit_tree(&ds, &uniform(14), &TreeConfig::default()).unwrap();
        assert!(matches!(tree.root, TreeNode::Split { attribute: 0, .. }));
    }

    #[test]
    fn pure_data_is_a_leaf() {
        let ds = line(&[1.0, 2.0, 3.0], &[1, 1, 1]);
        let tree = fit_tree(&ds, &uniform(3), &TreeConfig::default()).unwrap();
        assert!(matches!(tree.root, TreeNode::Leaf { class: 1, .. }));
        assert_eq!(predict_tree(&tree, &[10.0], 1).unwrap(), (1, 1.0));
    }

    #[test]
    fn separable_midpoint() {
        let ds = line(&[1.0, 2.0, 3.0, 4.0], &[0, 0, 1, 1]);
        let cfg = TreeConfig::default();
        let tree = fit_tree(&ds, &uniform(4), &cfg).unwrap();
        match &tree.root {
            TreeNode::Split {
                test: SplitTest::Threshold { threshold },
                ..
            } => assert_eq!(*threshold, 2.5),
            other => panic!("expected threshold split, got {other:?}"),
        }
        assert_eq!(weighted_accuracy(&tree, &ds, &uniform(4)).unwrap(), 1.0);
        assert_eq!(tree.predict(&[3.0]).unwrap(), 1);
        assert!(tree.predict(&[3.0, 1.0]).is_err());
    }

    #[test]
    fn unseen_category_takes_heaviest_branch() {
        let ds = Dataset::new(
            "cat",
            vec![Attribute::categorical("c", ["a", "b", "c", "d"])],
            "class",
            vec!["neg".into(), "pos".into()],
            [0, 0, 0, 0, 0, 1, 2]
                .iter()
                .map(|&v| vec![v as f64])
                .collect(),
            vec![0, 0, 0, 0, 0, 1, 1],
        )
        .unwrap();
        let cfg = TreeConfig {
            min_leaf_weight: Some(0.0),
            ..TreeConfig::default()
        };
        let tree = fit_tree(&ds, &uniform(7), &cfg).unwrap();
        match &tree.root {
            TreeNode::Split {
                test: SplitTest::Categories { branches, fallback },
                ..
            } => {
                assert_eq!(branches, &vec![0, 1, 2]);
                assert_eq!(*fallback, 0);
            }
            other => panic!("expected categorical split, got {other:?}"),
        }
        assert_eq!(tree.predict(&[3.0]).unwrap(), 0);
    }

    #[test]
    fn weighted_accuracy_cases() {
        let ds = line(&[1.0, 2.0], &[0, 1]);
        let leaf = TreeModel {
            num_attributes: 1,
            num_classes: 2,
            root: TreeNode::Leaf {
                class: 0,
                distribution: vec![1.0, 0.0],
            },
        };
        assert_eq!(weighted_accuracy(&leaf, &ds, &[0.75, 0.25]).unwrap(), 0.75);
        assert_eq!(weighted_accuracy(&leaf, &ds, &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn input_errors() {
        let ds = line(&[1.0, 2.0], &[0, 1]);
        assert!(fit_tree(&ds, &[0.0, 0.0], &TreeConfig::default()).is_err());
        assert!(fit_tree(&ds, &[1.0], &TreeConfig::default()).is_err());
        assert!(fit_tree(&ds.subset(&[]), &[], &TreeConfig::default()).is_err());
    }

    #[test]
    fn depth_limit_and_text() {
        let ds = line(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[0, 1, 0, 1, 0, 1]);
        let cfg = TreeConfig {
            max_depth: Some(1),
            min_leaf_weight: Some(0.0),
            min_split_gain_ratio: 0.0,
        };
        let tree = fit_tree(&ds, &uniform(6), &cfg).unwrap();
        assert!(tree.depth() <= 1);
        let text = tree.to_text(&ds.attributes, &ds.classes);
        assert!(text.contains("x <="), "{text}");
    }
}
