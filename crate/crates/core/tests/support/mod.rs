//! Fixtures and independent oracles shared by the integration tests and the
//! acceptance suite.

#![allow(dead_code)]

use cusboost::dataset::{Attribute, AttributeKind, Dataset};
use cusboost::rng::Rng;
use cusboost::tree::{SplitTest, TreeConfig, TreeModel, TreeNode};

/// The 14-day play-tennis table, all attributes nominal.
pub fn weather() -> Dataset {
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

/// Small mixed-type two-class dataset. Numeric values are drawn from a
/// short grid so ties are common; both classes are always present.
pub fn random_dataset(rng: &mut Rng, max_rows: usize, max_attrs: usize) -> Dataset {
    let n = 4 + rng.below(max_rows - 3);
    let a = 1 + rng.below(max_attrs);
    let attributes: Vec<Attribute> = (0..a)
        .map(|j| {
            if rng.below(3) == 0 {
                let k = 2 + rng.below(3);
                Attribute::categorical(format!("c{j}"), (0..k).map(|v| format!("v{v}")))
            } else {
                Attribute::numeric(format!("x{j}"))
            }
        })
        .collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            attributes
                .iter()
                .map(|attr| match &attr.kind {
                    AttributeKind::Categorical { categories } => rng.below(categories.len()) as f64,
                    AttributeKind::Numeric { .. } => rng.below(7) as f64 * 0.5,
                })
                .collect()
        })
        .collect();
    let mut labels: Vec<usize> = (0..n).map(|_| rng.below(2)).collect();
    labels[0] = 0;
    labels[1] = 1;
    Dataset::new(
        "random",
        attributes,
        "class",
        vec!["neg".into(), "pos".into()],
        rows,
        labels,
    )
    .unwrap()
}

/// Imbalanced numeric two-class dataset with overlapping classes; the
/// positive class is index 1 and always the minority.
pub fn noisy_imbalanced(rng: &mut Rng, majority: usize, minority: usize, dims: usize) -> Dataset {
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (label, count, centre) in [(0usize, majority, 0.0), (1, minority, 1.0)] {
        for _ in 0..count {
            rows.push(
                (0..dims)
                    .map(|_| centre + 2.0 * (rng.unit() - 0.5) * 1.5)
                    .collect(),
            );
            labels.push(label);
        }
    }
    Dataset::new(
        "noisy",
        (0..dims)
            .map(|j| Attribute::numeric(format!("x{j}")))
            .collect(),
        "class",
        vec!["neg".into(), "pos".into()],
        rows,
        labels,
    )
    .unwrap()
}

pub fn random_weights(rng: &mut Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| 0.1 + rng.unit()).collect()
}

fn entropy(dist: &[f64]) -> f64 {
    let total: f64 = dist.iter().sum();
    let mut h = 0.0;
    for &w in dist {
        if w > 0.0 {
            h -= w / total * (w / total).log2();
        }
    }
    h
}

/// Gain ratio of a partition of `rows`, recomputed from class weights.
fn gain_ratio(ds: &Dataset, w: &[f64], parts: &[Vec<usize>]) -> Option<f64> {
    let dist = |rows: &[usize]| {
        let mut d = vec![0.0; ds.classes.len()];
        for &r in rows {
            d[ds.labels[r]] += w[r];
        }
        d
    };
    let all: Vec<usize> = parts.concat();
    let parent = dist(&all);
    let total: f64 = parent.iter().sum();
    let mut remainder = 0.0;
    let mut split_info = 0.0;
    for part in parts {
        let d = dist(part);
        let pw: f64 = d.iter().sum();
        if pw > 0.0 {
            remainder += pw / total * entropy(&d);
            split_info -= pw / total * (pw / total).log2();
        }
    }
    if split_info < 1e-12 {
        return None;
    }
    Some((entropy(&parent) - remainder) / split_info)
}

/// Every admissible split at a node, as `(attribute, gain_ratio)`,
/// enumerated directly: each numeric attribute is cut between every pair of
/// adjacent distinct values, each categorical one split over its present
/// values. `w` must already sum to one over the whole training set.
pub fn enumerate_splits(
    ds: &Dataset,
    w: &[f64],
    rows: &[usize],
    min_leaf: f64,
) -> Vec<(usize, f64)> {
    let weight = |rows: &[usize]| rows.iter().map(|&r| w[r]).sum::<f64>() + 1e-12;
    let mut out = Vec::new();
    for (j, attr) in ds.attributes.iter().enumerate() {
        let mut values: Vec<f64> = rows.iter().map(|&r| ds.rows[r][j]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        if attr.is_categorical() {
            if values.len() < 2 {
                continue;
            }
            let parts: Vec<Vec<usize>> = values
                .iter()
                .map(|&v| {
                    rows.iter()
                        .copied()
                        .filter(|&r| ds.rows[r][j] == v)
                        .collect()
                })
                .collect();
            if parts.iter().filter(|p| weight(p) >= min_leaf).count() < 2 {
                continue;
            }
            if let Some(g) = gain_ratio(ds, w, &parts) {
                out.push((j, g));
            }
        } else {
            for pair in values.windows(2) {
                let left: Vec<usize> = rows
                    .iter()
                    .copied()
                    .filter(|&r| ds.rows[r][j] <= pair[0])
                    .collect();
                let right: Vec<usize> = rows
                    .iter()
                    .copied()
                    .filter(|&r| ds.rows[r][j] > pair[0])
                    .collect();
                if weight(&left) < min_leaf || weight(&right) < min_leaf {
                    continue;
                }
                if let Some(g) = gain_ratio(ds, w, &[left, right]) {
                    out.push((j, g));
                }
            }
        }
    }
    out
}

/// Checks a fitted tree node by node against [`enumerate_splits`]: every
/// split must attain the maximum gain ratio at its node, and every leaf that
/// could have split must have had no candidate clearing the gain-ratio
/// threshold. Returns the number of nodes checked or a description of the
/// first violation.
pub fn check_tree(
    ds: &Dataset,
    weights: &[f64],
    cfg: &TreeConfig,
    tree: &TreeModel,
) -> Result<usize, String> {
    let total: f64 = weights.iter().sum();
    let w: Vec<f64> = weights.iter().map(|x| x / total).collect();
    let min_leaf = cfg.min_leaf_weight.unwrap_or(2.0 / ds.len() as f64);
    let mut checked = 0;
    let mut stack: Vec<(&TreeNode, Vec<usize>, usize)> =
        vec![(&tree.root, (0..ds.len()).collect(), 0)];
    while let Some((node, rows, depth)) = stack.pop() {
        if rows.is_empty() {
            continue;
        }
        checked += 1;
        let splits = enumerate_splits(ds, &w, &rows, min_leaf);
        let best = splits.iter().map(|s| s.1).fold(f64::NEG_INFINITY, f64::max);
        match node {
            TreeNode::Leaf { .. } => {
                let pure = rows.iter().all(|&r| ds.labels[r] == ds.labels[rows[0]]);
                let mass: f64 = rows.iter().map(|&r| w[r]).sum();
                let blocked = pure
                    || cfg.max_depth.is_some_and(|d| depth >= d)
                    || mass + 1e-12 < 2.0 * min_leaf
                    || rows.len() < 2;
                if !blocked && best >= cfg.min_split_gain_ratio + 1e-9 {
                    return Err(format!(
                        "leaf at depth {depth} over {} rows left a split of gain ratio {best}",
                        rows.len()
                    ));
                }
            }
            TreeNode::Split {
                attribute,
                test,
                children,
                ..
            } => {
                let mine = splits
                    .iter()
                    .filter(|s| s.0 == *attribute)
                    .map(|s| s.1)
                    .fold(f64::NEG_INFINITY, f64::max);
                let chosen = chosen_gain_ratio(ds, &w, &rows, *attribute, test);
                if chosen < best - 1e-9 || mine < chosen - 1e-9 || chosen.is_nan() {
                    return Err(format!(
                        "split on attribute {attribute} at depth {depth} has gain ratio {chosen}, best is {best}"
                    ));
                }
                let mut parts = vec![Vec::new(); children.len()];
                for &r in &rows {
                    parts[route(test, ds.rows[r][*attribute])].push(r);
                }
                for (child, part) in children.iter().zip(parts) {
                    stack.push((child, part, depth + 1));
                }
            }
        }
    }
    Ok(checked)
}

fn route(test: &SplitTest, value: f64) -> usize {
    match test {
        SplitTest::Threshold { threshold } => usize::from(value > *threshold),
        SplitTest::Categories { branches, fallback } => branches
            .iter()
            .position(|&b| b as f64 == value)
            .unwrap_or(*fallback),
    }
}

fn chosen_gain_ratio(
    ds: &Dataset,
    w: &[f64],
    rows: &[usize],
    attribute: usize,
    test: &SplitTest,
) -> f64 {
    let arity = match test {
        SplitTest::Threshold { .. } => 2,
        SplitTest::Categories { branches, .. } => branches.len(),
    };
    let mut parts = vec![Vec::new(); arity];
    for &r in rows {
        parts[route(test, ds.rows[r][attribute])].push(r);
    }
    gain_ratio(ds, w, &parts).unwrap_or(f64::NEG_INFINITY)
}
