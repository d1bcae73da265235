//! Bias-free extreme learning machine with logistic-map input weights.
//!
//! Training is one linear solve: the hidden layer `H = g(F W)` is fixed by the
//! chaos-generated weights `W`, and the output weights are the minimum-norm
//! least-squares solution `beta = pinv(H) T` against one-hot targets `T`.
//! Prediction is the per-row argmax of `H beta`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chaos::{build_weight_matrix, ChaosConfig, WeightMatrix};
use crate::error::{Error, Result};
use crate::features::{
    extract_matrix_with, normalize_apply, normalize_fit, FeatureConvention, FeatureId,
    FeatureMatrix, NormalizationStats, SignalWindow,
};
use crate::linalg::{pinv, Matrix};

pub const DEFAULT_HIDDEN: usize = 20;
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    #[default]
    Sigmoid,
    Sine,
    Hardlim,
    Triangular,
    Radial,
}

impl Activation {
    pub const ALL: [Activation; 5] = [
        Activation::Sigmoid,
        Activation::Sine,
        Activation::Hardlim,
        Activation::Triangular,
        Activation::Radial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Activation::Sigmoid => "sigmoid",
            Activation::Sine => "sine",
            Activation::Hardlim => "hardlim",
            Activation::Triangular => "triangular",
            Activation::Radial => "radial",
        }
    }

    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Sine => x.sin(),
            // boundary belongs to the upper branch
            Activation::Hardlim => {
                if x >= 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Triangular => (1.0 - x.abs()).max(0.0),
            Activation::Radial => (-x * x).exp(),
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Activation::ALL
            .into_iter()
            .find(|a| a.name() == t)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown activation `{s}`")))
    }
}

pub fn activate(kind: Activation, x: f64) -> f64 {
    kind.apply(x)
}

/// `H[i][j] = g(row i of F . column j of W)`, with no bias term.
pub fn hidden_matrix(f: &FeatureMatrix, w: &WeightMatrix, act: Activation) -> Result<Matrix> {
    if f.cols() != w.inputs() {
        return Err(Error::DimensionMismatch(format!(
            "feature matrix has {} columns, input weights expect {}",
            f.cols(),
            w.inputs()
        )));
    }
    Ok(f.values().matmul(w.values())?.map(|x| act.apply(x)))
}

/// One-hot targets for 1-based labels.
pub fn one_hot(labels: &[usize], class_count: usize) -> Result<Matrix> {
    let mut t = Matrix::zeros(labels.len(), class_count);
    for (i, &label) in labels.iter().enumerate() {
        if label == 0 || label > class_count {
            return Err(Error::LabelOutOfRange { label, class_count });
        }
        t.set(i, label - 1, 1.0);
    }
    Ok(t)
}

/// 1-based argmax of every row; ties go to the lowest class.
pub fn argmax_rows(scores: &Matrix) -> Vec<usize> {
    scores
        .row_iter()
        .map(|row| {
            let mut best = 0;
            for (j, &v) in row.iter().enumerate().skip(1) {
                if v > row[best] {
                    best = j;
                }
            }
            best + 1
        })
        .collect()
}

/// Fraction of positions where `predicted` equals `truth`.
pub fn accuracy(predicted: &[usize], truth: &[usize]) -> Result<f64> {
    if predicted.len() != truth.len() {
        return Err(Error::LengthMismatch(predicted.len(), truth.len()));
    }
    if truth.is_empty() {
        return Err(Error::InvalidArgument(
            "accuracy of an empty prediction".into(),
        ));
    }
    let hits = predicted.iter().zip(truth).filter(|(p, t)| p == t).count();
    Ok(hits as f64 / truth.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElmConfig {
    pub hidden: usize,
    pub activation: Activation,
    pub chaos: ChaosConfig,
    pub normalize: bool,
}

impl Default for ElmConfig {
    fn default() -> Self {
        Self {
            hidden: DEFAULT_HIDDEN,
            activation: Activation::Sigmoid,
            chaos: ChaosConfig::default(),
            normalize: true,
        }
    }
}

impl ElmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hidden == 0 {
            return Err(Error::InvalidArgument(
                "hidden neuron count must be at least 1".into(),
            ));
        }
        self.chaos.validate()
    }
}

fn check_training_inputs(f: &FeatureMatrix, labels: &[usize], class_count: usize) -> Result<()> {
    if f.rows() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} feature rows but {} labels",
            f.rows(),
            labels.len()
        )));
    }
    if labels.is_empty() {
        return Err(Error::InvalidArgument("training set is empty".into()));
    }
    if class_count == 0 {
        return Err(Error::InvalidArgument(
            "class count must be at least 1".into(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    input_weights: WeightMatrix,
    output_weights: Matrix,
    activation: Activation,
    feature_ids: Vec<FeatureId>,
    normalization: Option<NormalizationStats>,
    class_count: usize,
    feature_convention: FeatureConvention,
}

/// Trains a logistic ELM on `f` with 1-based `labels`.
pub fn train(
    f: &FeatureMatrix,
    labels: &[usize],
    config: &ElmConfig,
    class_count: usize,
) -> Result<TrainedModel> {
    config.validate()?;
    check_training_inputs(f, labels, class_count)?;
    let targets = one_hot(labels, class_count)?;
    let normalization = config.normalize.then(|| normalize_fit(f)).transpose()?;
    let inputs = match &normalization {
        Some(stats) => normalize_apply(f, stats)?,
        None => f.clone(),
    };
    let w = build_weight_matrix(config.chaos, f.cols(), config.hidden)?;
    let h = hidden_matrix(&inputs, &w, config.activation)?;
    let beta = pinv(&h, None)?.matmul(&targets)?;
    Ok(TrainedModel {
        input_weights: w,
        output_weights: beta,
        activation: config.activation,
        feature_ids: f.feature_ids().to_vec(),
        normalization,
        class_count,
        feature_convention: FeatureConvention::default(),
    })
}

impl TrainedModel {
    pub fn input_weights(&self) -> &WeightMatrix {
        &self.input_weights
    }

    pub fn output_weights(&self) -> &Matrix {
        &self.output_weights
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn feature_ids(&self) -> &[FeatureId] {
        &self.feature_ids
    }

    pub fn normalization(&self) -> Option<&NormalizationStats> {
        self.normalization.as_ref()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn chaos(&self) -> ChaosConfig {
        self.input_weights.source_config()
    }

    pub fn feature_convention(&self) -> FeatureConvention {
        self.feature_convention
    }

    /// Records which feature convention produced the training features, so
    /// that [`predict_windows`](Self::predict_windows) extracts the same way.
    pub fn with_feature_convention(mut self, convention: FeatureConvention) -> Self {
        self.feature_convention = convention;
        self
    }

    /// Returns a copy with `beta` scaled; argmax is unchanged for `factor > 0`.
    pub fn with_scaled_output(&self, factor: f64) -> Self {
        let mut m = self.clone();
        m.output_weights = m.output_weights.scale(factor);
        m
    }

    /// Checks the feature layout and applies the stored normalization.
    pub fn prepare(&self, f: &FeatureMatrix) -> Result<FeatureMatrix> {
        if f.feature_ids() != self.feature_ids.as_slice() {
            return Err(Error::FeatureSetMismatch {
                expected: self.feature_ids.clone(),
                actual: f.feature_ids().to_vec(),
            });
        }
        match &self.normalization {
            Some(stats) => normalize_apply(f, stats),
            None => Ok(f.clone()),
        }
    }

    pub fn hidden(&self, prepared: &FeatureMatrix) -> Result<Matrix> {
        hidden_matrix(prepared, &self.input_weights, self.activation)
    }

    pub fn output(&self, hidden: &Matrix) -> Result<Matrix> {
        hidden.matmul(&self.output_weights)
    }

    /// Raw network outputs `H beta`, N×m.
    pub fn scores(&self, f: &FeatureMatrix) -> Result<Matrix> {
        self.output(&self.hidden(&self.prepare(f)?)?)
    }

    pub fn predict(&self, f: &FeatureMatrix) -> Result<Vec<usize>> {
        Ok(argmax_rows(&self.scores(f)?))
    }

    pub fn extract(&self, windows: &[SignalWindow]) -> Result<FeatureMatrix> {
        extract_matrix_with(windows, &self.feature_ids, self.feature_convention)
    }

    /// Extracts the model's features from raw windows, then predicts.
    pub fn predict_windows(&self, windows: &[SignalWindow]) -> Result<Vec<usize>> {
        self.predict(&self.extract(windows)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            version: MODEL_VERSION,
            activation: self.activation,
            chaos: self.chaos(),
            feature_ids: self.feature_ids.clone(),
            feature_convention: self.feature_convention,
            class_count: self.class_count,
            normalization: self.normalization.clone(),
            w: self.input_weights.values().to_rows(),
            beta: self.output_weights.to_rows(),
        };
        let mut s = serde_json::to_string_pretty(&file)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(s)?;
        if file.version != MODEL_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported model version {}",
                file.version
            )));
        }
        crate::features::check_ids(&file.feature_ids)?;
        let w = Matrix::from_rows(&file.w)?;
        let beta = Matrix::from_rows(&file.beta)?;
        let k = file.feature_ids.len();
        if w.rows() != k {
            return Err(Error::DimensionMismatch(format!(
                "W has {} rows for {k} features",
                w.rows()
            )));
        }
        if beta.rows() != w.cols() || beta.cols() != file.class_count {
            return Err(Error::DimensionMismatch(format!(
                "beta is {}x{}, expected {}x{}",
                beta.rows(),
                beta.cols(),
                w.cols(),
                file.class_count
            )));
        }
        if let Some(stats) = &file.normalization {
            if stats.means.len() != k || stats.stds.len() != k {
                return Err(Error::DimensionMismatch(
                    "normalization width differs from feature count".into(),
                ));
            }
        }
        Ok(TrainedModel {
            input_weights: WeightMatrix::from_parts(w, file.chaos)?,
            output_weights: beta,
            activation: file.activation,
            feature_ids: file.feature_ids,
            normalization: file.normalization,
            class_count: file.class_count,
            feature_convention: file.feature_convention,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&s)
    }
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    activation: Activation,
    chaos: ChaosConfig,
    feature_ids: Vec<FeatureId>,
    #[serde(default)]
    feature_convention: FeatureConvention,
    class_count: usize,
    normalization: Option<NormalizationStats>,
    #[serde(rename = "W")]
    w: Vec<Vec<f64>>,
    beta: Vec<Vec<f64>>,
}

/// Conventional ELM with uniformly random input weights and biases in
/// (-1, 1), used as the comparison baseline for the chaos-seeded model.
#[derive(Debug, Clone)]
pub struct RandomElm {
    weights: Matrix,
    bias: Vec<f64>,
    output_weights: Matrix,
    activation: Activation,
    normalization: Option<NormalizationStats>,
}

impl RandomElm {
    /// `config.chaos` is ignored; `seed` drives the weight and bias draw.
    pub fn train(
        f: &FeatureMatrix,
        labels: &[usize],
        config: &ElmConfig,
        class_count: usize,
        seed: u64,
    ) -> Result<Self> {
        if config.hidden == 0 {
            return Err(Error::InvalidArgument(
                "hidden neuron count must be at least 1".into(),
            ));
        }
        check_training_inputs(f, labels, class_count)?;
        let targets = one_hot(labels, class_count)?;
        let normalization = config.normalize.then(|| normalize_fit(f)).transpose()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights = Matrix::from_vec(
            f.cols(),
            config.hidden,
            (0..f.cols() * config.hidden)
                .map(|_| rng.random_range(-1.0..1.0))
                .collect(),
        )?;
        let bias: Vec<f64> = (0..config.hidden)
            .map(|_| rng.random_range(-1.0..1.0))
            .collect();
        let mut model = RandomElm {
            weights,
            bias,
            output_weights: Matrix::zeros(0, 0),
            activation: config.activation,
            normalization,
        };
        let h = model.hidden(f)?;
        model.output_weights = pinv(&h, None)?.matmul(&targets)?;
        Ok(model)
    }

    fn hidden(&self, f: &FeatureMatrix) -> Result<Matrix> {
        let x = match &self.normalization {
            Some(stats) => normalize_apply(f, stats)?,
            None => f.clone(),
        };
        let mut h = x.values().matmul(&self.weights)?;
        for i in 0..h.rows() {
            for (v, b) in h.row_mut(i).iter_mut().zip(&self.bias) {
                *v = self.activation.apply(*v + b);
            }
        }
        Ok(h)
    }

    pub fn predict(&self, f: &FeatureMatrix) -> Result<Vec<usize>> {
        if f.cols() != self.weights.rows() {
            return Err(Error::DimensionMismatch(format!(
                "feature matrix has {} columns, model expects {}",
                f.cols(),
                self.weights.rows()
            )));
        }
        Ok(argmax_rows(&self.hidden(f)?.matmul(&self.output_weights)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureId as F;

    fn fm(rows: &[&[f64]], ids: &[F]) -> FeatureMatrix {
        FeatureMatrix::new(Matrix::from_rows(rows).unwrap(), ids.to_vec()).unwrap()
    }

    #[test]
    fn activation_values() {
        assert_eq!(activate(Activation::Sigmoid, 0.0), 0.5);
        assert_eq!(activate(Activation::Hardlim, -0.1), 0.0);
        assert_eq!(activate(Activation::Hardlim, 0.0), 1.0);
        assert!((activate(Activation::Radial, 1.0) - 0.36787944117144233).abs() < 1e-15);
        assert_eq!(activate(Activation::Triangular, 0.25), 0.75);
        assert_eq!(activate(Activation::Triangular, -3.0), 0.0);
        assert_eq!(activate(Activation::Sine, 0.0), 0.0);
        for a in Activation::ALL {
            for x in [-1e308, -50.0, 0.0, 1e-300, 800.0, 1e308] {
                assert!(a.apply(x).is_finite(), "{a} at {x}");
            }
            assert_eq!(a.name().parse::<Activation>().unwrap(), a);
        }
        assert!("relu".parse::<Activation>().is_err());
    }

    #[test]
    fn zero_features_give_half_under_sigmoid() {
        let w = build_weight_matrix(ChaosConfig::default(), 1, 1).unwrap();
        let h = hidden_matrix(&fm(&[&[0.0]], &[F::Mean]), &w, Activation::Sigmoid).unwrap();
        assert_eq!(h.as_slice(), &[0.5]);

        let w = build_weight_matrix(ChaosConfig::new(0.3, 3.97).unwrap(), 3, 7).unwrap();
        let h = hidden_matrix(
            &fm(&[&[0.0, 0.0, 0.0]], &[F::Mean, F::StdDev, F::Variance]),
            &w,
            Activation::Sigmoid,
        )
        .unwrap();
        assert!(h.as_slice().iter().all(|&v| v == 0.5));
    }

    #[test]
    fn hidden_matrix_sine_by_hand() {
        // W = [[1], [1]] is not a logistic orbit, so build H from the pieces
        let f = fm(&[&[1.0, 0.0], &[0.5, 1.5]], &[F::Mean, F::StdDev]);
        let ones = Matrix::from_rows(&[[1.0], [1.0]]).unwrap();
        let h = f
            .values()
            .matmul(&ones)
            .unwrap()
            .map(|x| Activation::Sine.apply(x));
        assert!((h.get(0, 0) - 0.8414709848078965).abs() < 1e-15);
        assert!((h.get(1, 0) - 0.9092974268256817).abs() < 1e-15);

        let w = build_weight_matrix(ChaosConfig::default(), 2, 1).unwrap();
        assert!(matches!(
            hidden_matrix(&fm(&[&[1.0]], &[F::Mean]), &w, Activation::Sine),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn one_hot_examples() {
        assert_eq!(one_hot(&[1], 2).unwrap().to_rows(), vec![vec![1.0, 0.0]]);
        assert_eq!(
            one_hot(&[2, 1], 2).unwrap().to_rows(),
            vec![vec![0.0, 1.0], vec![1.0, 0.0]]
        );
        assert!(matches!(
            one_hot(&[3], 2),
            Err(Error::LabelOutOfRange { label: 3, .. })
        ));
        assert!(matches!(
            one_hot(&[0], 2),
            Err(Error::LabelOutOfRange { label: 0, .. })
        ));
    }

    #[test]
    fn argmax_and_ties() {
        let s = Matrix::from_rows(&[[0.2, 0.9], [0.5, 0.5], [-1.0, -2.0]]).unwrap();
        assert_eq!(argmax_rows(&s), vec![2, 1, 1]);
    }

    #[test]
    fn accuracy_examples() {
        assert_eq!(accuracy(&[1, 2, 3], &[1, 2, 3]).unwrap(), 1.0);
        assert_eq!(accuracy(&[1, 2], &[2, 1]).unwrap(), 0.0);
        assert_eq!(accuracy(&[1, 2, 3, 4], &[1, 2, 3, 1]).unwrap(), 0.75);
        assert!(matches!(
            accuracy(&[1], &[1, 2]),
            Err(Error::LengthMismatch(1, 2))
        ));
    }

    #[test]
    fn contradictory_rows_train_but_cannot_fit() {
        let f = fm(
            &[&[1.0, 2.0], &[1.0, 2.0], &[3.0, -1.0]],
            &[F::Mean, F::PeakValue],
        );
        let labels = [1, 2, 2];
        let model = train(&f, &labels, &ElmConfig::default(), 2).unwrap();
        let acc = accuracy(&model.predict(&f).unwrap(), &labels).unwrap();
        assert!(acc < 1.0);
    }

    #[test]
    fn predict_requires_same_feature_order() {
        let f = fm(&[&[1.0, 2.0], &[3.0, -1.0]], &[F::Mean, F::PeakValue]);
        let model = train(&f, &[1, 2], &ElmConfig::default(), 2).unwrap();
        let swapped = f.select(&[F::PeakValue, F::Mean]).unwrap();
        assert!(matches!(
            model.predict(&swapped),
            Err(Error::FeatureSetMismatch { .. })
        ));
    }

    #[test]
    fn model_json_rejects_bad_shapes() {
        let f = fm(&[&[1.0, 2.0], &[3.0, -1.0]], &[F::Mean, F::PeakValue]);
        let model = train(
            &f,
            &[1, 2],
            &ElmConfig {
                hidden: 3,
                ..Default::default()
            },
            2,
        )
        .unwrap();
        let json = model.to_json().unwrap();
        assert_eq!(TrainedModel::from_json(&json).unwrap(), model);

        let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
        v["class_count"] = 3.into();
        assert!(TrainedModel::from_json(&v.to_string()).is_err());
        let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
        v["chaos"]["z1"] = 0.61.into();
        assert!(TrainedModel::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn random_baseline_depends_on_seed() {
        let f = fm(
            &[
                &[0.0, 1.0],
                &[1.0, 0.3],
                &[2.0, -1.0],
                &[0.7, 0.2],
                &[1.5, 1.1],
                &[-0.4, 0.9],
            ],
            &[F::Mean, F::PeakValue],
        );
        let labels = [1, 2, 1, 2, 1, 2];
        let cfg = ElmConfig {
            hidden: 4,
            ..Default::default()
        };
        let a = RandomElm::train(&f, &labels, &cfg, 2, 1).unwrap();
        let b = RandomElm::train(&f, &labels, &cfg, 2, 1).unwrap();
        let c = RandomElm::train(&f, &labels, &cfg, 2, 2).unwrap();
        assert_eq!(a.weights, b.weights);
        assert_ne!(a.weights, c.weights);
        assert!(a
            .weights
            .as_slice()
            .iter()
            .chain(&a.bias)
            .all(|v| (-1.0..1.0).contains(v)));
        assert_eq!(a.predict(&f).unwrap().len(), 6);
    }
}
