use logistic_elm::elm::{activate, argmax_rows, hidden_matrix, one_hot, RandomElm};
use logistic_elm::synthetic::{generate_windows, SyntheticConfig};
use logistic_elm::{
    accuracy, extract_matrix, train, Activation, ChaosConfig, ElmConfig, Error, FeatureId,
    FeatureMatrix, Matrix, SignalWindow, TrainedModel,
};
use proptest::prelude::*;

fn windows(per_class: usize, classes: usize) -> (Vec<SignalWindow>, Vec<usize>) {
    let config = SyntheticConfig {
        windows_per_class: per_class,
        window_len: 512,
        ..Default::default()
    };
    let all: Vec<SignalWindow> = generate_windows(&config)
        .unwrap()
        .into_iter()
        .filter(|(label, _)| *label <= classes)
        .flat_map(|(_, w)| w)
        .collect();
    let labels = all.iter().map(|w| w.label().unwrap()).collect();
    (all, labels)
}

fn fixture() -> (FeatureMatrix, Vec<usize>, TrainedModel) {
    let (w, labels) = windows(8, 4);
    let f = extract_matrix(
        &w,
        &[FeatureId::StdDev, FeatureId::Kurtosis, FeatureId::PeakValue],
    )
    .unwrap();
    let model = train(&f, &labels, &ElmConfig::default(), 4).unwrap();
    (f, labels, model)
}

#[test]
fn interpolates_when_neurons_match_samples() {
    let (w, labels) = windows(5, 4);
    assert_eq!(w.len(), 20);
    let f = extract_matrix(&w, &FeatureId::ALL).unwrap();
    let config = ElmConfig {
        hidden: 20,
        activation: Activation::Sigmoid,
        ..Default::default()
    };
    let model = train(&f, &labels, &config, 4).unwrap();
    assert_eq!(accuracy(&model.predict(&f).unwrap(), &labels).unwrap(), 1.0);
    let h = model.hidden(&model.prepare(&f).unwrap()).unwrap();
    let residual = model
        .output(&h)
        .unwrap()
        .sub(&one_hot(&labels, 4).unwrap())
        .unwrap()
        .frobenius_norm();
    assert!(residual <= 1e-6, "residual {residual}");
}

#[test]
fn training_is_deterministic() {
    let (f, labels, model) = fixture();
    let again = train(&f, &labels, &ElmConfig::default(), 4).unwrap();
    assert_eq!(model, again);
    assert_eq!(model.to_json().unwrap(), again.to_json().unwrap());
}

#[test]
fn chaos_parameters_change_the_model() {
    let (f, labels, model) = fixture();
    let cfg = ElmConfig {
        chaos: ChaosConfig::new(0.3, 3.99).unwrap(),
        ..Default::default()
    };
    let other = train(&f, &labels, &cfg, 4).unwrap();
    assert_ne!(model.input_weights(), other.input_weights());
}

#[test]
fn json_round_trip_predicts_identically() {
    let (f, _, model) = fixture();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    model.save(&path).unwrap();
    let back = TrainedModel::load(&path).unwrap();
    assert_eq!(back, model);
    assert_eq!(back.scores(&f).unwrap(), model.scores(&f).unwrap());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        back.to_json().unwrap()
    );
}

#[test]
fn tampered_or_malformed_models_are_rejected() {
    let (_, _, model) = fixture();
    let json: serde_json::Value = serde_json::from_str(&model.to_json().unwrap()).unwrap();

    let mut w_changed = json.clone();
    w_changed["W"][0][0] = serde_json::json!(0.123);
    assert!(TrainedModel::from_json(&w_changed.to_string()).is_err());

    let mut short_beta = json.clone();
    short_beta["beta"].as_array_mut().unwrap().pop();
    assert!(TrainedModel::from_json(&short_beta.to_string()).is_err());

    let mut bad_feature = json;
    bad_feature["feature_ids"][0] = serde_json::json!(15);
    assert!(TrainedModel::from_json(&bad_feature.to_string()).is_err());
    assert!(TrainedModel::from_json("{").is_err());
}

#[test]
fn prediction_checks_feature_layout() {
    let (w, _) = windows(2, 2);
    let (_, _, model) = fixture();
    let wrong = extract_matrix(
        &w,
        &[FeatureId::Kurtosis, FeatureId::StdDev, FeatureId::PeakValue],
    )
    .unwrap();
    assert!(matches!(
        model.predict(&wrong),
        Err(Error::FeatureSetMismatch { .. })
    ));
    assert_eq!(model.predict_windows(&w).unwrap().len(), w.len());
}

#[test]
fn label_and_shape_errors() {
    let (f, mut labels, _) = fixture();
    assert!(matches!(
        one_hot(&[0], 3),
        Err(Error::LabelOutOfRange { .. })
    ));
    labels[0] = 9;
    assert!(matches!(
        train(&f, &labels, &ElmConfig::default(), 4),
        Err(Error::LabelOutOfRange { .. })
    ));
    assert!(train(&f, &labels[1..], &ElmConfig::default(), 9).is_err());
    let cfg = ElmConfig {
        hidden: 0,
        ..Default::default()
    };
    assert!(train(&f, &labels, &cfg, 9).is_err());
    let w = logistic_elm::build_weight_matrix(ChaosConfig::default(), 2, 5).unwrap();
    assert!(matches!(
        hidden_matrix(&f, &w, Activation::Sigmoid),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn argmax_breaks_ties_low() {
    let s = Matrix::from_rows(&[
        vec![0.2, 0.7, 0.7],
        vec![1.0, 1.0, 1.0],
        vec![-3.0, -1.0, -2.0],
    ])
    .unwrap();
    assert_eq!(argmax_rows(&s), vec![2, 1, 2]);
}

#[test]
fn activation_values() {
    assert_eq!(activate(Activation::Sigmoid, 0.0), 0.5);
    assert_eq!(activate(Activation::Hardlim, 0.0), 1.0);
    assert_eq!(activate(Activation::Hardlim, -1e-300), 0.0);
    assert_eq!(activate(Activation::Triangular, 0.25), 0.75);
    assert_eq!(activate(Activation::Triangular, -2.0), 0.0);
    assert_eq!(activate(Activation::Radial, 0.0), 1.0);
    assert_eq!(activate(Activation::Sine, 0.0), 0.0);
    for a in Activation::ALL {
        assert_eq!(a.name().parse::<Activation>().unwrap(), a);
    }
    assert!("relu".parse::<Activation>().is_err());
}

#[test]
fn random_baseline_depends_on_seed() {
    let (f, labels, _) = fixture();
    let cfg = ElmConfig::default();
    let a = RandomElm::train(&f, &labels, &cfg, 4, 1)
        .unwrap()
        .predict(&f)
        .unwrap();
    let b = RandomElm::train(&f, &labels, &cfg, 4, 1)
        .unwrap()
        .predict(&f)
        .unwrap();
    assert_eq!(a, b);
    // off-distribution probes: different random weights must disagree somewhere
    let probes = FeatureMatrix::new(
        Matrix::from_vec(
            30,
            3,
            (0..90)
                .map(|i| ((i * 37 % 17) as f64 - 8.0) * 0.7)
                .collect(),
        )
        .unwrap(),
        f.feature_ids().to_vec(),
    )
    .unwrap();
    let preds: Vec<Vec<usize>> = (0..10)
        .map(|s| {
            RandomElm::train(&f, &labels, &cfg, 4, s)
                .unwrap()
                .predict(&probes)
                .unwrap()
        })
        .collect();
    assert!(preds.iter().any(|p| p != &preds[0]));
}

proptest! {
    #[test]
    fn positive_output_scaling_keeps_predictions(factor in 1e-3f64..1e3) {
        let (f, _, model) = fixture();
        prop_assert_eq!(model.with_scaled_output(factor).predict(&f).unwrap(), model.predict(&f).unwrap());
    }

    #[test]
    fn bounded_activations(x in -1e3f64..1e3) {
        for a in [Activation::Sigmoid, Activation::Hardlim, Activation::Triangular, Activation::Radial] {
            let y = activate(a, x);
            prop_assert!((0.0..=1.0).contains(&y));
        }
        prop_assert!(activate(Activation::Sine, x).abs() <= 1.0);
    }

    #[test]
    fn argmax_is_within_range(rows in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 1..6), 1..10)) {
        let width = rows[0].len();
        let rows: Vec<Vec<f64>> = rows.into_iter().map(|mut r| { r.resize(width, 0.0); r }).collect();
        let m = Matrix::from_rows(&rows).unwrap();
        for (row, c) in rows.iter().zip(argmax_rows(&m)) {
            prop_assert!(c >= 1 && c <= width);
            prop_assert!(row.iter().all(|&v| v <= row[c - 1]));
            prop_assert!(row[..c - 1].iter().all(|&v| v < row[c - 1]));
        }
    }
}
