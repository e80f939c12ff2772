use std::path::PathBuf;
use std::process::{Command, Output};

fn keel(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/keel")
        .join(format!("{name}.dat"))
}

fn cusboost(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusboost"))
        .args(args)
        .output()
        .unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

#[test]
fn inspect_pima() {
    let out = cusboost(&["inspect", keel("pima").to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    assert!(stdout.contains("instances  768"), "{stdout}");
    assert!(stdout.contains("IR         1.87"), "{stdout}");
}

#[test]
fn zero_clusters_is_a_config_error() {
    let out = cusboost(&[
        "train",
        keel("pima").to_str().unwrap(),
        "--algorithm",
        "cusboost",
        "--clusters",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("clusters"));
}

#[test]
fn unknown_flag_prints_usage() {
    let out = cusboost(&["inspect", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stderr).contains("Usage"));
}

#[test]
fn missing_file_is_a_data_error_with_usage() {
    let out = cusboost(&["inspect", "/nonexistent/file.dat"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("Usage"));
}

#[test]
fn malformed_data_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dat");
    std::fs::write(
        &bad,
        "@relation r\n@attribute x real\n@attribute c {a,b}\n@data\n1,a\n?,b\n",
    )
    .unwrap();
    let out = cusboost(&["inspect", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn train_then_predict_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.json");
    let roc = dir.path().join("roc.csv");
    let data = keel("led7digit-0-2-4-5-6-7-8-9_vs_1");
    let data = data.to_str().unwrap();
    let out = cusboost(&[
        "train",
        data,
        "--rounds",
        "5",
        "--clusters",
        "3",
        "--out",
        model.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", text(&out.stderr));

    let out = cusboost(&[
        "predict",
        data,
        "--model",
        model.to_str().unwrap(),
        "--roc",
        roc.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("index,actual,predicted,positive_score"));
    assert_eq!(lines.count(), 443);
    assert!(std::fs::read_to_string(&roc)
        .unwrap()
        .starts_with("fp_rate,tp_rate\n0,0\n"));

    let out = cusboost(&[
        "predict",
        data,
        "--model",
        model.to_str().unwrap(),
        "--format",
        "report",
    ]);
    let auc: f64 = text(&out.stdout)
        .trim()
        .strip_prefix("auc ")
        .unwrap()
        .parse()
        .unwrap();
    assert!(auc > 0.8 && auc <= 1.0, "{auc}");
}

#[test]
fn sweep_k_lists_inertia() {
    let out = cusboost(&[
        "sweep-k",
        keel("pima").to_str().unwrap(),
        "--candidates",
        "1,2,4",
    ]);
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    let rows: Vec<(usize, f64)> = stdout
        .lines()
        .skip(1)
        .map(|l| {
            let (k, i) = l.split_once(',').unwrap();
            (k.parse().unwrap(), i.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), [1, 2, 4]);
    assert!(rows[0].1 > rows[1].1 && rows[1].1 > rows[2].1);
}

#[test]
fn bench_table_flags_the_row_best() {
    let out = cusboost(&[
        "bench",
        keel("poker-9_vs_7").to_str().unwrap(),
        "--algorithm",
        "rusboost,cusboost",
        "--folds",
        "3",
        "--repeats",
        "1",
        "--rounds",
        "5",
    ]);
    assert!(out.status.success(), "{}", text(&out.stderr));
    let stdout = text(&out.stdout);
    assert!(stdout.starts_with("dataset"));
    assert_eq!(stdout.matches('*').count(), 1, "{stdout}");
}
