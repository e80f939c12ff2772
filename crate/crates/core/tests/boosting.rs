mod support;

use cusboost::boosting::{
    compute_error, train, update_weights, vote_weight, WeightVector, ZERO_ERROR_EPSILON,
};
use cusboost::dataset::{binarize, Attribute, Dataset};
use cusboost::rng::Rng;
use cusboost::{Algorithm, BoostConfig, EnsembleModel};
use support::*;

fn noisy() -> Dataset {
    noisy_imbalanced(&mut Rng::seeded(3), 30, 10, 2)
}

fn fit(ds: &Dataset, cfg: &BoostConfig) -> EnsembleModel {
    train(ds, &binarize(ds, None).unwrap(), cfg).unwrap()
}

#[test]
fn three_round_golden() {
    let ds = noisy();
    let cfg = BoostConfig {
        rounds: 3,
        seed: 11,
        num_clusters: Some(2),
        ..BoostConfig::for_algorithm(Algorithm::CusBoost)
    };
    let model = fit(&ds, &cfg);
    let errors: Vec<f64> = model.rounds.iter().map(|r| r.error).collect();
    let votes: Vec<f64> = model.rounds.iter().map(|r| r.vote_weight).collect();
    assert_eq!(
        errors,
        [0.07500000000000001, 0.3873873873873873, 0.261029411764706]
    );
    assert_eq!(
        votes,
        [2.512305623976115, 0.4583075894825445, 1.0406250310177596]
    );
    assert!(votes.iter().all(|&v| v > 0.0));
    assert_eq!(model.total_retries(), 0);

    let ada = fit(
        &ds,
        &BoostConfig {
            algorithm: Algorithm::AdaBoost,
            ..cfg
        },
    );
    let errors: Vec<f64> = ada.rounds.iter().map(|r| r.error).collect();
    assert_eq!(errors, [0.05, 0.03947368421052635, 0.027397260273972632]);
}

#[test]
fn rounds_replay_against_full_training_set() {
    let ds = noisy();
    for algorithm in Algorithm::ALL {
        let cfg = BoostConfig {
            rounds: 8,
            seed: 5,
            num_clusters: Some(3),
            ..BoostConfig::for_algorithm(algorithm)
        };
        let model = fit(&ds, &cfg);
        let mut w = WeightVector::uniform(ds.len());
        for round in &model.rounds {
            let error = compute_error(&round.tree, &ds, &w).unwrap();
            assert_eq!(
                error.to_bits(),
                round.error.to_bits(),
                "{algorithm} round {}",
                round.round_index
            );
            assert!(round.error < 0.5);
            assert_eq!(
                round.vote_weight.to_bits(),
                vote_weight(round.error).to_bits()
            );
            if round.error > 0.0 {
                assert_eq!(
                    round.vote_weight.to_bits(),
                    ((1.0 - round.error) / round.error).ln().to_bits()
                );
                w = update_weights(&w, &round.tree, &ds, round.error).unwrap();
            } else {
                w = WeightVector::uniform(ds.len());
            }
            assert!((w.sum() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn separable_data_caps_the_vote() {
    let ds = Dataset::new(
        "sep",
        vec![Attribute::numeric("x")],
        "class",
        vec!["neg".into(), "pos".into()],
        (0..10).map(|i| vec![i as f64]).collect(),
        (0..10).map(|i| usize::from(i >= 7)).collect(),
    )
    .unwrap();
    let model = fit(
        &ds,
        &BoostConfig {
            rounds: 1,
            ..BoostConfig::for_algorithm(Algorithm::AdaBoost)
        },
    );
    assert_eq!(model.rounds.len(), 1);
    assert_eq!(model.rounds[0].error, 0.0);
    let cap = ((1.0 - ZERO_ERROR_EPSILON) / ZERO_ERROR_EPSILON).ln();
    assert_eq!(model.rounds[0].vote_weight, cap);
    assert_eq!(model.predict(&[9.0]).unwrap(), ("pos".to_string(), 1.0));
}

#[test]
fn degenerate_samplers_reduce_to_adaboost() {
    let ds = noisy();
    let ada = fit(
        &ds,
        &BoostConfig {
            rounds: 6,
            seed: 2,
            ..BoostConfig::for_algorithm(Algorithm::AdaBoost)
        },
    );
    let cus = fit(
        &ds,
        &BoostConfig {
            rounds: 6,
            seed: 2,
            num_clusters: Some(1),
            fraction: 1.0,
            ..BoostConfig::for_algorithm(Algorithm::CusBoost)
        },
    );
    // keeping the whole majority (ratio = IR) makes RUS the identity too
    let rus = fit(
        &ds,
        &BoostConfig {
            rounds: 6,
            seed: 2,
            target_ratio: 3.0,
            ..BoostConfig::for_algorithm(Algorithm::RusBoost)
        },
    );
    for other in [&cus, &rus] {
        assert_eq!(other.rounds.len(), ada.rounds.len());
        for (a, b) in ada.rounds.iter().zip(&other.rounds) {
            assert_eq!(a.tree, b.tree);
            assert_eq!(a.error.to_bits(), b.error.to_bits());
            assert_eq!(a.vote_weight.to_bits(), b.vote_weight.to_bits());
            assert_eq!(
                b.sample_plan.as_ref().unwrap().kept_indices,
                (0..ds.len()).collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn votes_sum_to_total_vote_weight() {
    let ds = noisy();
    let model = fit(
        &ds,
        &BoostConfig {
            rounds: 5,
            seed: 9,
            num_clusters: Some(2),
            ..BoostConfig::default()
        },
    );
    let total: f64 = model.rounds.iter().map(|r| r.vote_weight).sum();
    for row in &ds.rows {
        let votes = model.votes(row).unwrap();
        assert!((votes.iter().sum::<f64>() - total).abs() < 1e-12);
        let (_, score) = model.predict_index(row).unwrap();
        assert!((0.0..=1.0).contains(&score));
    }
}

#[test]
fn serialization_is_deterministic_and_lossless() {
    let ds = noisy();
    for algorithm in Algorithm::ALL {
        let cfg = BoostConfig {
            rounds: 4,
            seed: 21,
            ..BoostConfig::for_algorithm(algorithm)
        };
        let a = fit(&ds, &cfg);
        let b = fit(&ds, &cfg);
        let text = a.to_json().unwrap();
        assert_eq!(text, b.to_json().unwrap());
        let back = EnsembleModel::from_json(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.scores(&ds).unwrap(), a.scores(&ds).unwrap());
    }
}

#[test]
fn multi_class_is_reduced_to_positive_versus_rest() {
    let mut rng = Rng::seeded(4);
    let rows: Vec<Vec<f64>> = (0..60).map(|_| vec![rng.unit(), rng.unit()]).collect();
    let labels: Vec<usize> = (0..60).map(|i| if i < 8 { 2 } else { i % 2 }).collect();
    let ds = Dataset::new(
        "tri",
        vec![Attribute::numeric("a"), Attribute::numeric("b")],
        "class",
        vec!["x".into(), "y".into(), "z".into()],
        rows,
        labels,
    )
    .unwrap();
    let model = fit(
        &ds,
        &BoostConfig {
            rounds: 3,
            num_clusters: Some(2),
            ..BoostConfig::default()
        },
    );
    assert_eq!(model.classes, vec!["z".to_string(), "rest".to_string()]);
    assert_eq!(model.positive_label(), "z");
}

#[test]
fn invalid_configs_are_rejected() {
    let ds = noisy();
    let view = binarize(&ds, None).unwrap();
    for cfg in [
        BoostConfig {
            num_clusters: Some(0),
            ..BoostConfig::default()
        },
        BoostConfig {
            num_clusters: Some(31),
            ..BoostConfig::default()
        },
        BoostConfig {
            fraction: 0.0,
            ..BoostConfig::default()
        },
        BoostConfig {
            rounds: 0,
            ..BoostConfig::default()
        },
        BoostConfig {
            target_ratio: 0.5,
            ..BoostConfig::for_algorithm(Algorithm::RusBoost)
        },
        BoostConfig {
            smote_amount: 150,
            ..BoostConfig::for_algorithm(Algorithm::SmoteBoost)
        },
    ] {
        assert!(train(&ds, &view, &cfg).is_err(), "{cfg:?}");
    }
}
