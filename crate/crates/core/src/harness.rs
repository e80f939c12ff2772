//! Repeated stratified cross-validation over datasets and algorithms.
//!
//! Each `(dataset, algorithm, repeat, fold)` cell is an independent job:
//! train on the other folds, score the held-out fold with the ensemble's
//! positive vote share, and record its AUC. Seeds fan out from the master
//! seed by dataset name, repeat, fold and round, so a cell can be rerun in
//! isolation with [`run_cell`] and reproduce its in-experiment result.

use std::fmt::Write as _;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boosting::{choose_num_clusters, train, Algorithm, BoostConfig, EnsembleModel};
use crate::dataset::{
    binarize, parse_delimited, parse_keel, stratified_folds, summarize, BinaryView, Dataset,
    DatasetSummary, FoldPlan, LabelColumn,
};
use crate::error::{Error, Result};
use crate::metrics::roc_curve;
use crate::rng::derive_seed;

pub const REPORT_FORMAT: &str = "cusboost-run-report";
pub const REPORT_VERSION: u32 = 1;

pub const CELLS_HEADER: &str = "dataset,algorithm,repeat,fold,auc,rounds_accepted,retries,seed";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub datasets: Vec<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub folds: usize,
    pub repeats: usize,
    pub seed: u64,
    pub positive_label: Option<String>,
    /// Shared boosting settings; `algorithm` and `seed` are set per cell.
    pub boost: BoostConfig,
    /// Worker threads; `None` uses one per core. Not part of the report.
    #[serde(skip)]
    pub threads: Option<usize>,
    /// Store wall-clock training time per cell (makes reports run-dependent).
    pub record_timing: bool,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            datasets: Vec::new(),
            algorithms: Algorithm::ALL.to_vec(),
            folds: 10,
            repeats: 5,
            seed: 1,
            positive_label: None,
            boost: BoostConfig::default(),
            threads: None,
            record_timing: false,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.folds < 2 {
            return Err(Error::config("folds must be at least 2"));
        }
        if self.repeats < 1 {
            return Err(Error::config("repeats must be at least 1"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::config("no algorithms selected"));
        }
        if self.threads == Some(0) {
            return Err(Error::config("threads must be at least 1"));
        }
        self.boost.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum CellStatus {
    Ok,
    /// The test fold holds a single class, so AUC is undefined.
    SingleClassTest,
    TrainingFailed(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundSummary {
    pub error: f64,
    pub vote_weight: f64,
    pub retries: usize,
    pub plan_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub repeat: usize,
    pub fold: usize,
    pub seed: u64,
    pub status: CellStatus,
    pub auc: Option<f64>,
    pub rounds_accepted: usize,
    pub retries: usize,
    pub num_clusters: Option<usize>,
    pub rounds: Vec<RoundSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub train_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub dataset: String,
    pub algorithm: Algorithm,
    pub valid_cells: usize,
    pub invalid_cells: usize,
    pub mean_auc: Option<f64>,
    /// Sample standard deviation over valid cells.
    pub std_auc: Option<f64>,
    pub best_cell_auc: Option<f64>,
    /// Mean AUC of each repeat's valid cells.
    pub repeat_means: Vec<Option<f64>>,
    pub best_repeat_mean: Option<f64>,
    /// Sample standard deviation of the repeat means.
    pub std_repeat_means: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetRun {
    pub summary: DatasetSummary,
    pub positive_label: String,
    pub fold_plans: Vec<FoldPlan>,
    /// CUSBoost cluster count per repeat.
    pub chosen_clusters: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub version: u32,
    pub spec: ExperimentSpec,
    pub datasets: Vec<DatasetRun>,
    pub cells: Vec<CellResult>,
    pub aggregates: Vec<Aggregate>,
}

/// Reads a dataset, choosing the parser by extension: `.dat` is KEEL,
/// `.tsv` is tab-delimited, `.csv`/anything else comma-delimited with the
/// label in the last column.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let file = File::open(path)?;
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset");
    match ext.as_str() {
        "dat" => parse_keel(file),
        "tsv" => parse_delimited(file, b'\t', LabelColumn::Last, stem),
        _ => parse_delimited(file, b',', LabelColumn::Last, stem),
    }
}

fn dataset_seed(master: u64, name: &str) -> u64 {
    derive_seed(master, name, 0)
}

/// Seed of one cross-validation cell, shared by all algorithms in it.
pub fn cell_seed(master: u64, dataset: &str, repeat: usize, fold: usize) -> u64 {
    let repeat_seed = derive_seed(dataset_seed(master, dataset), "repeat", repeat as u64);
    derive_seed(repeat_seed, "fold", fold as u64)
}

/// Everything the cells of one `(dataset, repeat)` share.
struct RepeatContext {
    plan: FoldPlan,
    num_clusters: Option<usize>,
}

struct Prepared {
    binary: Dataset,
    positive_label: String,
}

fn prepare(ds: &Dataset, positive_label: Option<&str>) -> Result<Prepared> {
    let view = binarize(ds, positive_label)?;
    let (binary, _) = view.to_binary(ds);
    Ok(Prepared {
        binary,
        positive_label: view.positive_label,
    })
}

fn train_view(prepared: &Prepared, indices: &[usize]) -> Result<(Dataset, BinaryView)> {
    let train = prepared.binary.subset(indices);
    let view = binarize(&train, Some(&prepared.positive_label))?;
    Ok((train, view))
}

fn repeat_context(
    spec: &ExperimentSpec,
    prepared: &Prepared,
    repeat: usize,
) -> Result<RepeatContext> {
    let name = &prepared.binary.name;
    let seed = dataset_seed(spec.seed, name);
    let plan = stratified_folds(
        &prepared.binary,
        spec.folds,
        derive_seed(seed, "folds", repeat as u64),
    )?;
    let num_clusters = if !spec.algorithms.contains(&Algorithm::CusBoost) {
        None
    } else if let Some(k) = spec.boost.num_clusters {
        Some(k)
    } else {
        let (train, view) = train_view(prepared, &plan.train_indices(0))?;
        let k = choose_num_clusters(
            &train,
            &view,
            &spec.boost.cluster_candidates,
            derive_seed(seed, "cluster-sweep", repeat as u64),
            spec.boost.kmeans,
        )?;
        log::info!("{name}: repeat {repeat} uses {k} clusters");
        Some(k)
    };
    Ok(RepeatContext { plan, num_clusters })
}

fn cell_config(
    spec: &ExperimentSpec,
    algorithm: Algorithm,
    seed: u64,
    num_clusters: Option<usize>,
) -> BoostConfig {
    BoostConfig {
        algorithm,
        seed,
        num_clusters: if algorithm == Algorithm::CusBoost {
            num_clusters
        } else {
            spec.boost.num_clusters
        },
        ..spec.boost.clone()
    }
}

/// Trains and scores one cell, returning the model when training succeeded.
fn execute_cell(
    spec: &ExperimentSpec,
    prepared: &Prepared,
    ctx: &RepeatContext,
    algorithm: Algorithm,
    repeat: usize,
    fold: usize,
) -> (CellResult, Option<EnsembleModel>) {
    let name = prepared.binary.name.clone();
    let seed = cell_seed(spec.seed, &name, repeat, fold);
    let mut cell = CellResult {
        dataset: name,
        algorithm,
        repeat,
        fold,
        seed,
        status: CellStatus::Ok,
        auc: None,
        rounds_accepted: 0,
        retries: 0,
        num_clusters: None,
        rounds: Vec::new(),
        train_seconds: None,
    };
    let cfg = cell_config(spec, algorithm, seed, ctx.num_clusters);
    let started = Instant::now();
    let trained = train_view(prepared, &ctx.plan.train_indices(fold))
        .and_then(|(train_ds, view)| train(&train_ds, &view, &cfg));
    if spec.record_timing {
        cell.train_seconds = Some(started.elapsed().as_secs_f64());
    }
    let model = match trained {
        Ok(model) => model,
        Err(e) => {
            cell.status = CellStatus::TrainingFailed(e.to_string());
            return (cell, None);
        }
    };
    cell.rounds_accepted = model.rounds.len();
    cell.retries = model.total_retries();
    cell.num_clusters = model.num_clusters;
    cell.rounds = model
        .rounds
        .iter()
        .map(|r| RoundSummary {
            error: r.error,
            vote_weight: r.vote_weight,
            retries: r.retries,
            plan_seed: r.plan_seed,
        })
        .collect();
    let test = prepared.binary.subset(&ctx.plan.test_indices(fold));
    cell.auc = match test_auc(&model, &test) {
        Ok(auc) => Some(auc),
        Err(_) => {
            cell.status = CellStatus::SingleClassTest;
            None
        }
    };
    (cell, Some(model))
}

/// AUC of `model` on a labelled test set.
pub fn test_auc(model: &EnsembleModel, test: &Dataset) -> Result<f64> {
    let scores = model.scores(test)?;
    let positive = test
        .class_index(model.positive_label())
        .ok_or_else(|| Error::invalid("test set lacks the positive class"))?;
    Ok(roc_curve(&test.labels, &scores, &positive)?.auc)
}

/// Reruns a single cell of `spec` on `ds` in isolation.
pub fn run_cell(
    spec: &ExperimentSpec,
    ds: &Dataset,
    algorithm: Algorithm,
    repeat: usize,
    fold: usize,
) -> Result<(CellResult, Option<EnsembleModel>, Dataset)> {
    spec.validate()?;
    let prepared = prepare(ds, spec.positive_label.as_deref())?;
    let ctx = repeat_context(spec, &prepared, repeat)?;
    let (cell, model) = execute_cell(spec, &prepared, &ctx, algorithm, repeat, fold);
    let test = prepared.binary.subset(&ctx.plan.test_indices(fold));
    Ok((cell, model, test))
}

/// Loads `spec.datasets` and runs the experiment.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunReport> {
    let datasets = spec
        .datasets
        .iter()
        .map(|p| load_dataset(p))
        .collect::<Result<Vec<_>>>()?;
    run_on_datasets(spec, &datasets)
}

pub fn run_on_datasets(spec: &ExperimentSpec, datasets: &[Dataset]) -> Result<RunReport> {
    spec.validate()?;
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = spec.threads {
            builder = builder.num_threads(n);
        }
        builder.build().map_err(|e| Error::config(e.to_string()))?
    };
    pool.install(|| run_inner(spec, datasets))
}

fn run_inner(spec: &ExperimentSpec, datasets: &[Dataset]) -> Result<RunReport> {
    let prepared: Vec<Prepared> = datasets
        .iter()
        .map(|ds| prepare(ds, spec.positive_label.as_deref()))
        .collect::<Result<_>>()?;
    let contexts: Vec<Vec<RepeatContext>> = prepared
        .par_iter()
        .map(|p| {
            (0..spec.repeats)
                .into_par_iter()
                .map(|r| repeat_context(spec, p, r))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut jobs = Vec::new();
    for d in 0..prepared.len() {
        for (a, &algorithm) in spec.algorithms.iter().enumerate() {
            for repeat in 0..spec.repeats {
                for fold in 0..spec.folds {
                    jobs.push((d, a, algorithm, repeat, fold));
                }
            }
        }
    }
    let mut keyed: Vec<((usize, usize, usize, usize), CellResult)> = jobs
        .into_par_iter()
        .map(|(d, a, algorithm, repeat, fold)| {
            let (cell, _) = execute_cell(
                spec,
                &prepared[d],
                &contexts[d][repeat],
                algorithm,
                repeat,
                fold,
            );
            ((d, a, repeat, fold), cell)
        })
        .collect();
    keyed.sort_by_key(|(key, _)| *key);
    let cells: Vec<CellResult> = keyed.into_iter().map(|(_, c)| c).collect();

    for cell in &cells {
        match &cell.status {
            CellStatus::Ok => {}
            CellStatus::SingleClassTest => log::warn!(
                "{} {} r{} f{}: single-class test fold excluded",
                cell.dataset,
                cell.algorithm,
                cell.repeat,
                cell.fold
            ),
            CellStatus::TrainingFailed(msg) => log::warn!(
                "{} {} r{} f{}: training failed: {msg}",
                cell.dataset,
                cell.algorithm,
                cell.repeat,
                cell.fold
            ),
        }
    }

    let runs = prepared
        .iter()
        .zip(&contexts)
        .map(|(p, ctx)| DatasetRun {
            summary: summarize(&p.binary),
            positive_label: p.positive_label.clone(),
            fold_plans: ctx.iter().map(|c| c.plan.clone()).collect(),
            chosen_clusters: ctx.iter().map(|c| c.num_clusters).collect(),
        })
        .collect::<Vec<_>>();
    let aggregates = aggregate(&cells, spec.repeats);
    Ok(RunReport {
        format: REPORT_FORMAT.to_string(),
        version: REPORT_VERSION,
        spec: spec.clone(),
        datasets: runs,
        cells,
        aggregates,
    })
}

fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

fn sample_std(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

fn max(values: impl Iterator<Item = f64>) -> Option<f64> {
    values.fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
}

/// Per `(dataset, algorithm)` statistics over cells, in first-seen order.
pub fn aggregate(cells: &[CellResult], repeats: usize) -> Vec<Aggregate> {
    let mut keys: Vec<(String, Algorithm)> = Vec::new();
    for c in cells {
        let key = (c.dataset.clone(), c.algorithm);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(dataset, algorithm)| {
            let mine: Vec<&CellResult> = cells
                .iter()
                .filter(|c| c.dataset == dataset && c.algorithm == algorithm)
                .collect();
            let valid: Vec<f64> = mine.iter().filter_map(|c| c.auc).collect();
            let repeat_means: Vec<Option<f64>> = (0..repeats)
                .map(|r| {
                    let aucs: Vec<f64> = mine
                        .iter()
                        .filter(|c| c.repeat == r)
                        .filter_map(|c| c.auc)
                        .collect();
                    mean(&aucs)
                })
                .collect();
            let present_means: Vec<f64> = repeat_means.iter().flatten().copied().collect();
            Aggregate {
                dataset,
                algorithm,
                valid_cells: valid.len(),
                invalid_cells: mine.len() - valid.len(),
                mean_auc: mean(&valid),
                std_auc: sample_std(&valid),
                best_cell_auc: max(valid.iter().copied()),
                best_repeat_mean: max(present_means.iter().copied()),
                std_repeat_means: sample_std(&present_means),
                repeat_means,
            }
        })
        .collect()
}

impl RunReport {
    pub fn aggregate_for(&self, dataset: &str, algorithm: Algorithm) -> Option<&Aggregate> {
        self.aggregates
            .iter()
            .find(|a| a.dataset == dataset && a.algorithm == algorithm)
    }

    /// One line per cell under [`CELLS_HEADER`]; undefined AUCs print `NA`.
    pub fn cells_csv(&self) -> String {
        let mut out = String::from(CELLS_HEADER);
        out.push('\n');
        for c in &self.cells {
            let auc = c.auc.map_or_else(|| "NA".to_string(), |a| a.to_string());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                c.dataset, c.algorithm, c.repeat, c.fold, auc, c.rounds_accepted, c.retries, c.seed
            );
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: RunReport = serde_json::from_str(text)?;
        if report.format != REPORT_FORMAT || report.version != REPORT_VERSION {
            return Err(Error::invalid("not a run report of a supported version"));
        }
        Ok(report)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMode {
    Mean,
    Best,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub dataset: String,
    pub cells: Vec<Option<f64>>,
    /// Column holding the row maximum.
    pub best: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonTable {
    pub mode: TableMode,
    pub algorithms: Vec<Algorithm>,
    pub rows: Vec<TableRow>,
    /// Algorithms left out because they have no valid cell anywhere.
    pub omitted: Vec<Algorithm>,
}

/// Datasets by algorithms, each cell the mean AUC (`Mean`) or the best
/// per-repeat mean AUC (`Best`), with the row maximum flagged.
pub fn compare_table(report: &RunReport, mode: TableMode) -> ComparisonTable {
    let value = |a: &Aggregate| match mode {
        TableMode::Mean => a.mean_auc,
        TableMode::Best => a.best_repeat_mean,
    };
    let mut datasets: Vec<String> = Vec::new();
    let mut algorithms: Vec<Algorithm> = Vec::new();
    for a in &report.aggregates {
        if !datasets.contains(&a.dataset) {
            datasets.push(a.dataset.clone());
        }
        if !algorithms.contains(&a.algorithm) {
            algorithms.push(a.algorithm);
        }
    }
    let (kept, omitted): (Vec<Algorithm>, Vec<Algorithm>) =
        algorithms.into_iter().partition(|&alg| {
            report
                .aggregates
                .iter()
                .any(|a| a.algorithm == alg && value(a).is_some())
        });
    for alg in &omitted {
        log::warn!("{alg} has no valid cells; column omitted");
    }
    let rows = datasets
        .into_iter()
        .map(|dataset| {
            let cells: Vec<Option<f64>> = kept
                .iter()
                .map(|&alg| report.aggregate_for(&dataset, alg).and_then(value))
                .collect();
            let mut best: Option<usize> = None;
            for (i, v) in cells.iter().enumerate() {
                if let Some(v) = v {
                    if best.is_none_or(|b| *v > cells[b].unwrap()) {
                        best = Some(i);
                    }
                }
            }
            TableRow {
                dataset,
                cells,
                best,
            }
        })
        .collect();
    ComparisonTable {
        mode,
        algorithms: kept,
        rows,
        omitted,
    }
}

impl ComparisonTable {
    /// Aligned plain-text rendering; the row maximum carries a `*`.
    pub fn render(&self) -> String {
        let mut header = vec!["dataset".to_string()];
        header.extend(self.algorithms.iter().map(|a| a.to_string()));
        let mut lines = vec![header];
        for row in &self.rows {
            let mut line = vec![row.dataset.clone()];
            for (i, v) in row.cells.iter().enumerate() {
                let mark = if row.best == Some(i) { "*" } else { "" };
                line.push(v.map_or_else(|| "-".to_string(), |v| format!("{v:.4}{mark}")));
            }
            lines.push(line);
        }
        let widths: Vec<usize> = (0..lines[0].len())
            .map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for line in &lines {
            let cells: Vec<String> = line
                .iter()
                .enumerate()
                .map(|(c, text)| {
                    if c == 0 {
                        format!("{text:<w$}", w = widths[c])
                    } else {
                        format!("{text:>w$}", w = widths[c] + 1)
                    }
                })
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(
        dataset: &str,
        algorithm: Algorithm,
        repeat: usize,
        fold: usize,
        auc: Option<f64>,
    ) -> CellResult {
        CellResult {
            dataset: dataset.into(),
            algorithm,
            repeat,
            fold,
            seed: 0,
            status: if auc.is_some() {
                CellStatus::Ok
            } else {
                CellStatus::SingleClassTest
            },
            auc,
            rounds_accepted: 1,
            retries: 0,
            num_clusters: None,
            rounds: vec![],
            train_seconds: None,
        }
    }

    fn report(cells: Vec<CellResult>, repeats: usize) -> RunReport {
        RunReport {
            format: REPORT_FORMAT.into(),
            version: REPORT_VERSION,
            spec: ExperimentSpec::default(),
            datasets: vec![],
            aggregates: aggregate(&cells, repeats),
            cells,
        }
    }

    #[test]
    fn aggregation_laws() {
        let cells = vec![
            cell("d", Algorithm::CusBoost, 0, 0, Some(0.6)),
            cell("d", Algorithm::CusBoost, 0, 1, Some(0.8)),
            cell("d", Algorithm::CusBoost, 1, 0, Some(0.9)),
            cell("d", Algorithm::CusBoost, 1, 1, None),
        ];
        let agg = &aggregate(&cells, 2)[0];
        assert_eq!(agg.valid_cells, 3);
        assert_eq!(agg.invalid_cells, 1);
        assert!((agg.mean_auc.unwrap() - 2.3 / 3.0).abs() < 1e-12);
        assert_eq!(agg.best_cell_auc, Some(0.9));
        assert_eq!(agg.repeat_means, vec![Some(0.7), Some(0.9)]);
        assert_eq!(agg.best_repeat_mean, Some(0.9));
    }

    #[test]
    fn table_flags_row_best() {
        let r = report(
            vec![
                cell("d", Algorithm::RusBoost, 0, 0, Some(0.6)),
                cell("d", Algorithm::CusBoost, 0, 0, Some(0.7)),
            ],
            1,
        );
        let t = compare_table(&r, TableMode::Mean);
        assert_eq!(t.rows[0].best, Some(1));
        assert!(t.render().contains("0.7000*"));
    }

    #[test]
    fn best_mode_takes_max_repeat_mean() {
        let r = report(
            vec![
                cell("d", Algorithm::CusBoost, 0, 0, Some(0.6)),
                cell("d", Algorithm::CusBoost, 1, 0, Some(0.9)),
                cell("d", Algorithm::CusBoost, 2, 0, Some(0.7)),
            ],
            3,
        );
        assert_eq!(
            compare_table(&r, TableMode::Best).rows[0].cells,
            vec![Some(0.9)]
        );
    }

    #[test]
    fn empty_column_is_omitted() {
        let r = report(
            vec![
                cell("d", Algorithm::AdaBoost, 0, 0, None),
                cell("d", Algorithm::CusBoost, 0, 0, Some(0.7)),
            ],
            1,
        );
        let t = compare_table(&r, TableMode::Mean);
        assert_eq!(t.algorithms, vec![Algorithm::CusBoost]);
        assert_eq!(t.omitted, vec![Algorithm::AdaBoost]);
    }

    #[test]
    fn cells_csv_format() {
        let r = report(
            vec![
                cell("d", Algorithm::CusBoost, 0, 1, Some(0.75)),
                cell("d", Algorithm::CusBoost, 0, 2, None),
            ],
            1,
        );
        let csv = r.cells_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CELLS_HEADER));
        assert_eq!(lines.next(), Some("d,cusboost,0,1,0.75,1,0,0"));
        assert_eq!(lines.next(), Some("d,cusboost,0,2,NA,1,0,0"));
    }

    #[test]
    fn spec_validation() {
        assert!(ExperimentSpec {
            folds: 1,
            ..ExperimentSpec::default()
        }
        .validate()
        .is_err());
        assert!(ExperimentSpec {
            repeats: 0,
            ..ExperimentSpec::default()
        }
        .validate()
        .is_err());
        assert!(ExperimentSpec {
            algorithms: vec![],
            ..ExperimentSpec::default()
        }
        .validate()
        .is_err());
        assert!(ExperimentSpec::default().validate().is_ok());
    }
}
