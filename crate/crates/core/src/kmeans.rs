//! Feature encoding and Lloyd's k-means with k-means++ seeding.

use serde::{Deserialize, Serialize};

use crate::dataset::{AttributeKind, Dataset};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, Rng};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EncodedAttribute {
    /// `(x - shift) / scale`
    Numeric { shift: f64, scale: f64 },
    /// One 0/1 coordinate per declared category.
    OneHot { categories: usize },
    /// Attribute left out of the encoded space.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureEncoding {
    pub attributes: Vec<EncodedAttribute>,
}

impl FeatureEncoding {
    /// Standardizes numeric attributes over `indices` (population standard
    /// deviation; zero-variance attributes get scale 1) and, when
    /// `include_categorical` is set, one-hot encodes categorical ones.
    fn fit(ds: &Dataset, indices: &[usize], include_categorical: bool) -> Self {
        let n = indices.len() as f64;
        let attributes = ds
            .attributes
            .iter()
            .enumerate()
            .map(|(j, attr)| match &attr.kind {
                AttributeKind::Numeric { .. } => {
                    let mean = indices.iter().map(|&i| ds.rows[i][j]).sum::<f64>() / n;
                    let var = indices
                        .iter()
                        .map(|&i| (ds.rows[i][j] - mean).powi(2))
                        .sum::<f64>()
                        / n;
                    let sd = var.sqrt();
                    let scale = if sd > 0.0 { sd } else { 1.0 };
                    EncodedAttribute::Numeric { shift: mean, scale }
                }
                AttributeKind::Categorical { categories } if include_categorical => {
                    EncodedAttribute::OneHot {
                        categories: categories.len(),
                    }
                }
                AttributeKind::Categorical { .. } => EncodedAttribute::Skipped,
            })
            .collect();
        FeatureEncoding { attributes }
    }

    /// Encoding with numeric attributes only (categorical ones skipped).
    pub fn numeric_only(ds: &Dataset, indices: &[usize]) -> Self {
        Self::fit(ds, indices, false)
    }

    pub fn width(&self) -> usize {
        self.attributes
            .iter()
            .map(|a| match a {
                EncodedAttribute::Numeric { .. } => 1,
                EncodedAttribute::OneHot { categories } => *categories,
                EncodedAttribute::Skipped => 0,
            })
            .sum()
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.width());
        for (value, attr) in row.iter().zip(&self.attributes) {
            match attr {
                EncodedAttribute::Numeric { shift, scale } => out.push((value - shift) / scale),
                EncodedAttribute::OneHot { categories } => {
                    let hot = *value as usize;
                    out.extend((0..*categories).map(|c| if c == hot { 1.0 } else { 0.0 }));
                }
                EncodedAttribute::Skipped => {}
            }
        }
        out
    }
}

/// Encodes the rows at `indices`: numeric attributes standardized over those
/// rows, categorical attributes one-hot.
pub fn encode(ds: &Dataset, indices: &[usize]) -> Result<(FeatureEncoding, Vec<Vec<f64>>)> {
    if indices.is_empty() {
        return Err(Error::invalid("cannot encode an empty index set"));
    }
    let encoding = FeatureEncoding::fit(ds, indices, true);
    let matrix = indices
        .iter()
        .map(|&i| encoding.apply(&ds.rows[i]))
        .collect();
    Ok((encoding, matrix))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KMeansParams {
    pub max_iters: usize,
    /// Stop once the largest centroid move is at most this far.
    pub tol: f64,
}

impl Default for KMeansParams {
    fn default() -> Self {
        KMeansParams {
            max_iters: 100,
            tol: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterModel {
    pub k: usize,
    pub centroids: Vec<Vec<f64>>,
    pub assignment: Vec<usize>,
    pub inertia: f64,
    pub iterations_run: usize,
    /// Inertia after each assignment step, ending with the final assignment.
    pub inertia_history: Vec<f64>,
}

impl ClusterModel {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &a in &self.assignment {
            sizes[a] += 1;
        }
        sizes
    }

    /// Row positions grouped by cluster, each group ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.k];
        for (row, &a) in self.assignment.iter().enumerate() {
            groups[a].push(row);
        }
        groups
    }
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = squared_distance(point, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn plus_plus_init(matrix: &[Vec<f64>], k: usize, rng: &mut Rng) -> Vec<Vec<f64>> {
    let mut centroids = vec![matrix[rng.below(matrix.len())].clone()];
    let mut dist: Vec<f64> = matrix
        .iter()
        .map(|p| squared_distance(p, &centroids[0]))
        .collect();
    while centroids.len() < k {
        let total: f64 = dist.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.unit() * total;
            let mut acc = 0.0;
            let mut chosen = None;
            for (i, d) in dist.iter().enumerate() {
                acc += d;
                if acc > target && *d > 0.0 {
                    chosen = Some(i);
                    break;
                }
            }
            // rounding can leave target just past the accumulated sum
            chosen.unwrap_or_else(|| dist.iter().rposition(|&d| d > 0.0).unwrap())
        } else {
            rng.below(matrix.len())
        };
        let centroid = matrix[pick].clone();
        for (d, p) in dist.iter_mut().zip(matrix) {
            *d = d.min(squared_distance(p, &centroid));
        }
        centroids.push(centroid);
    }
    centroids
}

fn assign(matrix: &[Vec<f64>], centroids: &[Vec<f64>]) -> Vec<usize> {
    matrix.iter().map(|p| nearest(p, centroids).0).collect()
}

/// Re-seeds each empty cluster at the point farthest from its own centroid,
/// taken from a cluster that has more than one member.
fn repair_empty(matrix: &[Vec<f64>], centroids: &mut [Vec<f64>], assignment: &mut [usize]) {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &a in assignment.iter() {
        sizes[a] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in matrix.iter().enumerate() {
            if sizes[assignment[i]] < 2 {
                continue;
            }
            let d = squared_distance(p, &centroids[assignment[i]]);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((i, d));
            }
        }
        let Some((i, _)) = best else { break };
        sizes[assignment[i]] -= 1;
        assignment[i] = empty;
        sizes[empty] = 1;
        centroids[empty] = matrix[i].clone();
    }
}

fn inertia(matrix: &[Vec<f64>], centroids: &[Vec<f64>], assignment: &[usize]) -> f64 {
    matrix
        .iter()
        .zip(assignment)
        .map(|(p, &a)| squared_distance(p, &centroids[a]))
        .sum()
}

fn means(
    matrix: &[Vec<f64>],
    assignment: &[usize],
    k: usize,
    previous: &[Vec<f64>],
) -> Vec<Vec<f64>> {
    let width = matrix[0].len();
    let mut sums = vec![vec![0.0; width]; k];
    let mut counts = vec![0usize; k];
    for (p, &a) in matrix.iter().zip(assignment) {
        counts[a] += 1;
        for (s, x) in sums[a].iter_mut().zip(p) {
            *s += x;
        }
    }
    sums.into_iter()
        .zip(counts)
        .enumerate()
        .map(|(c, (sum, n))| {
            if n == 0 {
                previous[c].clone()
            } else {
                sum.into_iter().map(|s| s / n as f64).collect()
            }
        })
        .collect()
}

/// Lloyd's algorithm on the rows of `matrix`.
///
/// Each iteration assigns every row to its nearest centroid (ties to the
/// lowest index), repairs empty clusters, then moves centroids to cluster
/// means. Iteration stops when no centroid moves farther than `params.tol`
/// or after `params.max_iters` iterations; the returned assignment is made
/// against the final centroids.
pub fn kmeans_fit(
    matrix: &[Vec<f64>],
    k: usize,
    seed: u64,
    params: KMeansParams,
) -> Result<ClusterModel> {
    if k < 1 {
        return Err(Error::config("k must be at least 1"));
    }
    if k > matrix.len() {
        return Err(Error::config(format!(
            "k = {k} exceeds {} rows",
            matrix.len()
        )));
    }
    let width = matrix[0].len();
    if matrix.iter().any(|r| r.len() != width) {
        return Err(Error::invalid("ragged matrix"));
    }
    let mut rng = Rng::seeded(seed);
    let mut centroids = plus_plus_init(matrix, k, &mut rng);
    let mut history = Vec::new();
    let mut iterations_run = 0;
    while iterations_run < params.max_iters.max(1) {
        let mut assignment = assign(matrix, &centroids);
        repair_empty(matrix, &mut centroids, &mut assignment);
        history.push(inertia(matrix, &centroids, &assignment));
        let updated = means(matrix, &assignment, k, &centroids);
        let shift = centroids
            .iter()
            .zip(&updated)
            .map(|(a, b)| squared_distance(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = updated;
        iterations_run += 1;
        if shift <= params.tol {
            break;
        }
    }
    let mut assignment = assign(matrix, &centroids);
    repair_empty(matrix, &mut centroids, &mut assignment);
    let final_inertia = inertia(matrix, &centroids, &assignment);
    history.push(final_inertia);
    Ok(ClusterModel {
        k,
        centroids,
        assignment,
        inertia: final_inertia,
        iterations_run,
        inertia_history: history,
    })
}

/// Fits every candidate k with its own sub-seed derived from `(seed, k)`.
pub fn sweep_k(
    matrix: &[Vec<f64>],
    candidates: &[usize],
    seed: u64,
    params: KMeansParams,
) -> Result<Vec<(usize, f64)>> {
    candidates
        .iter()
        .map(|&k| {
            let model = kmeans_fit(matrix, k, derive_seed(seed, "sweep-k", k as u64), params)?;
            Ok((k, model.inertia))
        })
        .collect()
}

/// Elbow choice over a sweep: the candidate with the largest relative
/// inertia drop from its predecessor (first wins ties). A single-entry sweep
/// returns its only k.
pub fn select_elbow(sweep: &[(usize, f64)]) -> Option<usize> {
    let mut sorted = sweep.to_vec();
    sorted.sort_by_key(|&(k, _)| k);
    match sorted.len() {
        0 => return None,
        1 => return Some(sorted[0].0),
        _ => {}
    }
    let mut best = (sorted[1].0, f64::NEG_INFINITY);
    for pair in sorted.windows(2) {
        let (prev, next) = (pair[0].1, pair[1].1);
        let drop = if prev > 0.0 {
            (prev - next) / prev
        } else {
            0.0
        };
        if drop > best.1 {
            best = (pair[1].0, drop);
        }
    }
    Some(best.0)
}
