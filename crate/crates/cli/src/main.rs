use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use cusboost::boosting::{train, DEFAULT_CLUSTER_CANDIDATES};
use cusboost::dataset::{binarize, summarize};
use cusboost::harness::{compare_table, load_dataset, run_experiment, ExperimentSpec, TableMode};
use cusboost::kmeans::{encode, select_elbow, sweep_k};
use cusboost::metrics::roc_curve;
use cusboost::{Algorithm, BoostConfig, EnsembleModel, Error, KMeansParams, TreeConfig};

#[derive(Parser)]
#[command(
    name = "cusboost",
    version,
    about = "Boosting with cluster-based under-sampling for imbalanced data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print instance, feature and class counts and the imbalance ratio.
    Inspect {
        data: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Train one ensemble on a whole dataset and save it.
    Train {
        data: PathBuf,
        #[arg(long, default_value = "cusboost")]
        algorithm: Algorithm,
        #[command(flatten)]
        boost: BoostArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        positive_label: Option<String>,
        /// Where to write the model; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a dataset with a saved model.
    Predict {
        data: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Delimited)]
        format: Format,
        /// Also write the ROC curve (needs labels of both classes).
        #[arg(long)]
        roc: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeated stratified cross-validation of one or more algorithms.
    Bench {
        #[arg(required = true)]
        data: Vec<PathBuf>,
        /// Comma-separated; all four when absent.
        #[arg(long, value_delimiter = ',')]
        algorithm: Vec<Algorithm>,
        #[command(flatten)]
        boost: BoostArgs,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        positive_label: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Table cell: mean AUC or best per-repeat mean AUC.
        #[arg(long, value_enum, default_value_t = Mode::Mean)]
        mode: Mode,
        #[arg(long)]
        threads: Option<usize>,
        /// Record wall-clock training time in the report.
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// k-means inertia over candidate k on the majority class.
    SweepK {
        data: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_CLUSTER_CANDIDATES)]
        candidates: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        positive_label: Option<String>,
    },
}

#[derive(Args)]
struct BoostArgs {
    #[arg(long, default_value_t = 20)]
    rounds: usize,
    #[arg(long, default_value_t = 10)]
    max_retries: usize,
    /// CUSBoost cluster count; chosen by inertia elbow when absent.
    #[arg(long)]
    clusters: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    #[arg(long, default_value_t = 1.0)]
    target_ratio: f64,
    #[arg(long, default_value_t = 200)]
    smote_amount: u32,
    #[arg(long, default_value_t = 5)]
    smote_neighbors: usize,
    #[arg(long, default_value_t = 100)]
    kmeans_max_iters: usize,
    #[arg(long, default_value_t = 1e-6)]
    kmeans_tol: f64,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    min_leaf_weight: Option<f64>,
    #[arg(long, default_value_t = 1e-4)]
    min_gain_ratio: f64,
}

impl BoostArgs {
    fn config(&self, algorithm: Algorithm, seed: u64) -> BoostConfig {
        BoostConfig {
            algorithm,
            rounds: self.rounds,
            max_retries_per_round: self.max_retries,
            num_clusters: self.clusters,
            fraction: self.fraction,
            target_ratio: self.target_ratio,
            smote_amount: self.smote_amount,
            smote_neighbors: self.smote_neighbors,
            kmeans: KMeansParams {
                max_iters: self.kmeans_max_iters,
                tol: self.kmeans_tol,
            },
            tree: TreeConfig {
                max_depth: self.max_depth,
                min_leaf_weight: self.min_leaf_weight,
                min_split_gain_ratio: self.min_gain_ratio,
            },
            seed,
            ..BoostConfig::default()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Delimited,
    Report,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Mean,
    Best,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => 1,
        Error::Training(_) => 3,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, text: &str) -> cusboost::Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(command: Command) -> cusboost::Result<()> {
    match command {
        Command::Inspect { data, format } => {
            let summary = summarize(&load_dataset(&data)?);
            let text = match format {
                Format::Report => serde_json::to_string_pretty(&summary)? + "\n",
                Format::Delimited => {
                    let mut s = String::from("name,instances,features,imbalance_ratio\n");
                    s += &format!(
                        "{},{},{},{}\n",
                        summary.name,
                        summary.num_instances,
                        summary.num_features,
                        summary.imbalance_ratio
                    );
                    s
                }
                Format::Table => {
                    let mut s = format!(
                        "dataset    {}\ninstances  {}\nfeatures   {}\nIR         {:.2}\n",
                        summary.name,
                        summary.num_instances,
                        summary.num_features,
                        summary.imbalance_ratio
                    );
                    for (label, count) in &summary.class_counts {
                        s += &format!("class      {label}: {count}\n");
                    }
                    s
                }
            };
            emit(None, &text)
        }
        Command::Train {
            data,
            algorithm,
            boost,
            seed,
            positive_label,
            out,
        } => {
            let cfg = boost.config(algorithm, seed);
            cfg.validate()?;
            let ds = load_dataset(&data)?;
            let view = binarize(&ds, positive_label.as_deref())?;
            let model = train(&ds, &view, &cfg)?;
            log::info!(
                "{} rounds accepted, {} retries{}",
                model.rounds.len(),
                model.total_retries(),
                if model.stopped_early {
                    ", stopped early"
                } else {
                    ""
                }
            );
            emit(out.as_deref(), &(model.to_json()? + "\n"))
        }
        Command::Predict {
            data,
            model,
            format,
            roc,
            out,
        } => {
            let model = EnsembleModel::from_json(&fs::read_to_string(&model)?)?;
            let ds = load_dataset(&data)?;
            let mut rows = Vec::with_capacity(ds.len());
            for row in &ds.rows {
                rows.push(model.predict(row)?);
            }
            let labels: Vec<bool> = ds
                .labels
                .iter()
                .map(|&l| ds.classes[l] == model.positive_label())
                .collect();
            let scores: Vec<f64> = rows.iter().map(|r| r.1).collect();
            let curve = if roc.is_some() || format == Format::Report {
                Some(roc_curve(&labels, &scores, &true)?)
            } else {
                None
            };
            if let (Some(path), Some(curve)) = (&roc, &curve) {
                fs::write(path, curve.to_delimited())?;
            }
            let mut text = String::new();
            match format {
                Format::Report => {
                    text += &format!("auc {}\n", curve.as_ref().map_or(f64::NAN, |c| c.auc));
                }
                Format::Delimited => {
                    text += "index,actual,predicted,positive_score\n";
                    for (i, (label, score)) in rows.iter().enumerate() {
                        text += &format!("{i},{},{label},{score}\n", ds.classes[ds.labels[i]]);
                    }
                }
                Format::Table => {
                    for (i, (label, score)) in rows.iter().enumerate() {
                        text += &format!(
                            "{i:>6}  {:<12} {label:<12} {score:.4}\n",
                            ds.classes[ds.labels[i]]
                        );
                    }
                }
            }
            emit(out.as_deref(), &text)
        }
        Command::Bench {
            data,
            algorithm,
            boost,
            folds,
            repeats,
            seed,
            positive_label,
            format,
            mode,
            threads,
            timing,
            out,
        } => {
            let spec = ExperimentSpec {
                datasets: data,
                algorithms: if algorithm.is_empty() {
                    Algorithm::ALL.to_vec()
                } else {
                    algorithm
                },
                folds,
                repeats,
                seed,
                positive_label,
                boost: boost.config(Algorithm::CusBoost, seed),
                threads,
                record_timing: timing,
            };
            let report = run_experiment(&spec)?;
            let text = match format {
                Format::Table => compare_table(
                    &report,
                    match mode {
                        Mode::Mean => TableMode::Mean,
                        Mode::Best => TableMode::Best,
                    },
                )
                .render(),
                Format::Delimited => report.cells_csv(),
                Format::Report => report.to_json()? + "\n",
            };
            emit(out.as_deref(), &text)
        }
        Command::SweepK {
            data,
            candidates,
            seed,
            positive_label,
        } => {
            let ds = load_dataset(&data)?;
            let view = binarize(&ds, positive_label.as_deref())?;
            let usable: Vec<usize> = candidates
                .into_iter()
                .filter(|&k| k >= 1 && k <= view.majority_indices.len())
                .collect();
            if usable.is_empty() {
                return Err(Error::Config(
                    "no candidate k fits the majority class".into(),
                ));
            }
            let (_, matrix) = encode(&ds, &view.majority_indices)?;
            let sweep = sweep_k(&matrix, &usable, seed, KMeansParams::default())?;
            let elbow = select_elbow(&sweep);
            let mut text = String::from("k,inertia\n");
            for (k, inertia) in &sweep {
                text += &format!("{k},{inertia}\n");
            }
            if let Some(k) = elbow {
                log::info!("elbow at k = {k}");
            }
            emit(None, &text)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Io(_)) {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
