//! Experiment harness: hyper-parameter sweeps, the chaos-vs-random stability
//! study, multi-condition evaluation, and the inference latency benchmark.
//!
//! Sweeps train on the train split and score on the verify split. Only the
//! end-to-end pipeline and the stability study touch the test split.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chaos::ChaosConfig;
use crate::dataio::{DatasetManifest, SplitDataset};
use crate::elm::{accuracy, argmax_rows, train, Activation, ElmConfig, RandomElm, TrainedModel};
use crate::error::{Error, Result};
use crate::features::{FeatureConvention, FeatureId, FeatureTable, SignalWindow};
use crate::sfs::{sfs_select_tables, SfsConfig, SfsTrace};

/// Feature table plus labels for one split.
#[derive(Debug, Clone)]
pub struct LabeledFeatures {
    pub table: FeatureTable,
    pub labels: Vec<usize>,
}

impl LabeledFeatures {
    pub fn extract(windows: &[SignalWindow], convention: FeatureConvention) -> Result<Self> {
        let labels = windows
            .iter()
            .enumerate()
            .map(|(i, w)| {
                w.label()
                    .ok_or_else(|| Error::InvalidArgument(format!("window {i} has no label")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            table: FeatureTable::extract(windows, convention)?,
            labels,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    Verify,
    Test,
}

/// All three splits with features extracted once.
#[derive(Debug, Clone)]
pub struct ExperimentData {
    pub train: LabeledFeatures,
    pub verify: LabeledFeatures,
    pub test: LabeledFeatures,
    pub class_count: usize,
    pub convention: FeatureConvention,
}

impl ExperimentData {
    pub fn from_split(ds: &SplitDataset, convention: FeatureConvention) -> Result<Self> {
        if ds.train.is_empty() {
            return Err(Error::InvalidArgument("train split is empty".into()));
        }
        Ok(Self {
            train: LabeledFeatures::extract(&ds.train, convention)?,
            verify: LabeledFeatures::extract(&ds.verify, convention)?,
            test: LabeledFeatures::extract(&ds.test, convention)?,
            class_count: ds.class_count,
            convention,
        })
    }

    fn split(&self, split: Split) -> &LabeledFeatures {
        match split {
            Split::Verify => &self.verify,
            Split::Test => &self.test,
        }
    }

    /// Trains on the train split with `features` and returns the model.
    pub fn train_model(&self, features: &[FeatureId], config: &ElmConfig) -> Result<TrainedModel> {
        let f = self.train.table.matrix(features)?;
        Ok(train(&f, &self.train.labels, config, self.class_count)?
            .with_feature_convention(self.convention))
    }

    /// Train-then-score for a single configuration.
    pub fn evaluate(
        &self,
        features: &[FeatureId],
        config: &ElmConfig,
        split: Split,
    ) -> Result<f64> {
        let model = self.train_model(features, config)?;
        let target = self.split(split);
        if target.labels.is_empty() {
            return Err(Error::InvalidArgument("evaluation split is empty".into()));
        }
        accuracy(
            &model.predict(&target.table.matrix(features)?)?,
            &target.labels,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Activation(Vec<Activation>),
    Neurons(Vec<usize>),
    Z1(Vec<f64>),
    Mu(Vec<f64>),
}

impl Axis {
    pub fn len(&self) -> usize {
        match self {
            Axis::Activation(v) => v.len(),
            Axis::Neurons(v) => v.len(),
            Axis::Z1(v) | Axis::Mu(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn name(&self) -> &'static str {
        match self {
            Axis::Activation(_) => "activation",
            Axis::Neurons(_) => "neurons",
            Axis::Z1(_) => "z1",
            Axis::Mu(_) => "mu",
        }
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            Axis::Activation(v) => v[i].to_string(),
            Axis::Neurons(v) => v[i].to_string(),
            Axis::Z1(v) | Axis::Mu(v) => format!("{}", v[i]),
        }
    }
}

/// Accuracy grid over two axes; `accuracy[r][c]` pairs row `r` with column `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Axis,
    pub cols: Axis,
    pub accuracy: Vec<Vec<f64>>,
    pub repetitions: usize,
}

impl SweepResult {
    /// Every cell attaining the maximum accuracy, row-major.
    pub fn best_cells(&self) -> Vec<(usize, usize)> {
        let best = self
            .accuracy
            .iter()
            .flatten()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let mut cells = Vec::new();
        for (r, row) in self.accuracy.iter().enumerate() {
            for (c, &a) in row.iter().enumerate() {
                if a == best {
                    cells.push((r, c));
                }
            }
        }
        cells
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{},{},accuracy\n", self.rows.name(), self.cols.name());
        for (r, row) in self.accuracy.iter().enumerate() {
            for (c, a) in row.iter().enumerate() {
                let _ = writeln!(out, "{},{},{a:?}", self.rows.label(r), self.cols.label(c));
            }
        }
        out
    }

    pub fn to_table(&self) -> String {
        let head: Vec<String> =
            std::iter::once(format!("{}\\{}", self.rows.name(), self.cols.name()))
                .chain((0..self.cols.len()).map(|c| self.cols.label(c)))
                .collect();
        let body: Vec<Vec<String>> = self
            .accuracy
            .iter()
            .enumerate()
            .map(|(r, row)| {
                std::iter::once(self.rows.label(r))
                    .chain(row.iter().map(|a| format!("{a:.4}")))
                    .collect()
            })
            .collect();
        render_table(&head, &body)
    }
}

pub(crate) fn render_table(head: &[String], body: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..head.len())
        .map(|c| {
            body.iter()
                .map(|r| r[c].len())
                .chain([head[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in std::iter::once(head).chain(body.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}

fn grid<F>(rows: usize, cols: usize, cell: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(usize, usize) -> Result<f64> + Sync,
{
    let flat = (0..rows * cols)
        .into_par_iter()
        .map(|i| cell(i / cols, i % cols))
        .collect::<Vec<Result<f64>>>()
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
    Ok(flat.chunks(cols.max(1)).map(<[f64]>::to_vec).collect())
}

/// Accuracy on the verify split for every (activation, hidden count) pair.
pub fn sweep_neurons(
    data: &ExperimentData,
    features: &[FeatureId],
    activations: &[Activation],
    neurons: &[usize],
    chaos: ChaosConfig,
    normalize: bool,
) -> Result<SweepResult> {
    if neurons.is_empty() || activations.is_empty() {
        return Err(Error::InvalidArgument(
            "sweep axes must be non-empty".into(),
        ));
    }
    if neurons.windows(2).any(|w| w[0] >= w[1]) || neurons[0] == 0 {
        return Err(Error::InvalidArgument(
            "neuron counts must be positive and ascending".into(),
        ));
    }
    chaos.validate()?;
    let accuracy = grid(activations.len(), neurons.len(), |r, c| {
        let cfg = ElmConfig {
            hidden: neurons[c],
            activation: activations[r],
            chaos,
            normalize,
        };
        data.evaluate(features, &cfg, Split::Verify)
    })?;
    Ok(SweepResult {
        rows: Axis::Activation(activations.to_vec()),
        cols: Axis::Neurons(neurons.to_vec()),
        accuracy,
        repetitions: 1,
    })
}

/// Pearson correlation between accuracy and hidden-neuron count for one
/// activation row, restricted to `lo..=hi` neurons.
pub fn neuron_correlation(sweep: &SweepResult, row: usize, lo: usize, hi: usize) -> Result<f64> {
    let Axis::Neurons(neurons) = &sweep.cols else {
        return Err(Error::InvalidArgument(
            "sweep columns are not neuron counts".into(),
        ));
    };
    let (xs, ys): (Vec<f64>, Vec<f64>) = neurons
        .iter()
        .zip(&sweep.accuracy[row])
        .filter(|(&n, _)| (lo..=hi).contains(&n))
        .map(|(&n, &a)| (n as f64, a))
        .unzip();
    pearson(&xs, &ys)
}

/// Accuracy on the verify split over a (z1, mu) grid.
pub fn sweep_chaos(
    data: &ExperimentData,
    features: &[FeatureId],
    z1s: &[f64],
    mus: &[f64],
    config: &ElmConfig,
) -> Result<SweepResult> {
    if z1s.is_empty() || mus.is_empty() {
        return Err(Error::InvalidArgument(
            "sweep axes must be non-empty".into(),
        ));
    }
    for &z1 in z1s {
        for &mu in mus {
            ChaosConfig::new(z1, mu)?;
        }
    }
    let accuracy = grid(z1s.len(), mus.len(), |r, c| {
        let cfg = ElmConfig {
            chaos: ChaosConfig {
                z1: z1s[r],
                mu: mus[c],
            },
            ..*config
        };
        data.evaluate(features, &cfg, Split::Verify)
    })?;
    Ok(SweepResult {
        rows: Axis::Z1(z1s.to_vec()),
        cols: Axis::Mu(mus.to_vec()),
        accuracy,
        repetitions: 1,
    })
}

/// Population Pearson correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::InvalidArgument(
            "pearson needs at least two points".into(),
        ));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 || xs.iter().all(|&x| x == xs[0]) || ys.iter().all(|&y| y == ys[0])
    {
        return Err(Error::ConstantInput);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Accuracy histogram bins: exactly 1, eleven one-point bins down to 0.90,
/// and everything below.
pub const STABILITY_BINS: [(&str, f64, f64); 12] = [
    ("1", 1.0, f64::INFINITY),
    ("[0.99,1)", 0.99, 1.0),
    ("[0.98,0.99)", 0.98, 0.99),
    ("[0.97,0.98)", 0.97, 0.98),
    ("[0.96,0.97)", 0.96, 0.97),
    ("[0.95,0.96)", 0.95, 0.96),
    ("[0.94,0.95)", 0.94, 0.95),
    ("[0.93,0.94)", 0.93, 0.94),
    ("[0.92,0.93)", 0.92, 0.93),
    ("[0.91,0.92)", 0.91, 0.92),
    ("[0.90,0.91)", 0.90, 0.91),
    ("[0,0.90)", 0.0, 0.90),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub bin: String,
    pub logistic: f64,
    pub random: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub max: f64,
    pub min: f64,
}

impl Distribution {
    fn new(accuracies: Vec<f64>) -> Self {
        let n = accuracies.len() as f64;
        // shifted by the first value so identical accuracies give exactly zero
        let origin = accuracies.first().copied().unwrap_or(0.0);
        let shift = accuracies.iter().map(|a| a - origin).sum::<f64>() / n;
        let mean = origin + shift;
        let variance = accuracies
            .iter()
            .map(|a| (a - origin - shift).powi(2))
            .sum::<f64>()
            / n;
        let max = accuracies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = accuracies.iter().cloned().fold(f64::INFINITY, f64::min);
        Self {
            accuracies,
            mean,
            variance,
            max,
            min,
        }
    }

    fn density(&self, lo: f64, hi: f64) -> f64 {
        let hits = self
            .accuracies
            .iter()
            .filter(|&&a| a >= lo && a < hi)
            .count();
        hits as f64 / self.accuracies.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub trials: usize,
    pub logistic: Distribution,
    pub random_baseline: Distribution,
    pub histogram: Vec<HistogramBin>,
}

impl StabilityReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_table(&self) -> String {
        let head = vec![
            "accuracy".to_string(),
            "random ELM".into(),
            "logistic ELM".into(),
        ];
        let mut body: Vec<Vec<String>> = self
            .histogram
            .iter()
            .map(|b| {
                vec![
                    b.bin.clone(),
                    format!("{:.2}", b.random),
                    format!("{:.2}", b.logistic),
                ]
            })
            .collect();
        body.push(vec![
            "highest".into(),
            format!("{:.4}", self.random_baseline.max),
            format!("{:.4}", self.logistic.max),
        ]);
        body.push(vec![
            "expected".into(),
            format!("{:.4}", self.random_baseline.mean),
            format!("{:.4}", self.logistic.mean),
        ]);
        body.push(vec![
            "variance".into(),
            format!("{:.3e}", self.random_baseline.variance),
            format!("{:.3e}", self.logistic.variance),
        ]);
        render_table(&head, &body)
    }
}

/// Trains both models `trials` times and scores each on the test split.
///
/// The logistic model is retrained from scratch every trial; the random
/// baseline draws fresh weights and biases from `seed + trial`.
pub fn stability_study(
    data: &ExperimentData,
    features: &[FeatureId],
    config: &ElmConfig,
    trials: usize,
    seed: u64,
) -> Result<StabilityReport> {
    if trials < 2 {
        return Err(Error::InvalidArgument(
            "stability study needs at least 2 trials".into(),
        ));
    }
    let f_train = data.train.table.matrix(features)?;
    let f_test = data.test.table.matrix(features)?;
    let results = (0..trials)
        .into_par_iter()
        .map(|t| {
            let logistic = train(&f_train, &data.train.labels, config, data.class_count)?;
            let l = accuracy(&logistic.predict(&f_test)?, &data.test.labels)?;
            let random = RandomElm::train(
                &f_train,
                &data.train.labels,
                config,
                data.class_count,
                seed.wrapping_add(t as u64),
            )?;
            let r = accuracy(&random.predict(&f_test)?, &data.test.labels)?;
            Ok((l, r))
        })
        .collect::<Vec<Result<(f64, f64)>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let logistic = Distribution::new(results.iter().map(|r| r.0).collect());
    let random_baseline = Distribution::new(results.iter().map(|r| r.1).collect());
    let histogram = STABILITY_BINS
        .iter()
        .map(|&(bin, lo, hi)| HistogramBin {
            bin: bin.to_string(),
            logistic: logistic.density(lo, hi),
            random: random_baseline.density(lo, hi),
        })
        .collect();
    Ok(StabilityReport {
        trials,
        logistic,
        random_baseline,
        histogram,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub mean_s: f64,
    pub min_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatencyReport {
    pub samples: usize,
    pub window_len: usize,
    pub features: usize,
    pub hidden: usize,
    pub repetitions: usize,
    pub parallel: bool,
    pub stages: Vec<StageTiming>,
    pub total: StageTiming,
}

impl LatencyReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_table(&self) -> String {
        let head = vec!["stage".to_string(), "mean (s)".into(), "min (s)".into()];
        let body: Vec<Vec<String>> = self
            .stages
            .iter()
            .chain([&self.total])
            .map(|s| {
                vec![
                    s.stage.clone(),
                    format!("{:.6}", s.mean_s),
                    format!("{:.6}", s.min_s),
                ]
            })
            .collect();
        format!(
            "{} windows x {} points, K={}, L={}, {} repetitions{}\n{}",
            self.samples,
            self.window_len,
            self.features,
            self.hidden,
            self.repetitions,
            if self.parallel {
                ", parallel"
            } else {
                ", single thread"
            },
            render_table(&head, &body)
        )
    }
}

pub const BENCH_STAGES: [&str; 4] = [
    "feature_extraction",
    "hidden_matrix",
    "output_product",
    "argmax",
];

/// Times `model` on raw windows: feature extraction (with normalization),
/// hidden layer, output product and argmax. One warm-up pass is discarded.
/// Unless `parallel`, everything runs on a dedicated single-thread pool.
pub fn bench_inference(
    model: &TrainedModel,
    windows: &[SignalWindow],
    repetitions: usize,
    parallel: bool,
) -> Result<LatencyReport> {
    if repetitions == 0 {
        return Err(Error::InvalidArgument(
            "repetitions must be at least 1".into(),
        ));
    }
    if windows.is_empty() {
        return Err(Error::InvalidArgument("nothing to benchmark".into()));
    }
    let run = || -> Result<Vec<[Duration; 5]>> {
        let mut timings = Vec::with_capacity(repetitions);
        for rep in 0..=repetitions {
            let start = Instant::now();
            let prepared = model.prepare(&model.extract(windows)?)?;
            let t1 = Instant::now();
            let h = model.hidden(&prepared)?;
            let t2 = Instant::now();
            let out = model.output(&h)?;
            let t3 = Instant::now();
            let classes = argmax_rows(&out);
            let end = Instant::now();
            std::hint::black_box(&classes);
            if rep > 0 {
                timings.push([t1 - start, t2 - t1, t3 - t2, end - t3, end - start]);
            }
        }
        Ok(timings)
    };
    let timings = if parallel {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| {
                Error::InvalidArgument(format!("cannot build benchmark thread pool: {e}"))
            })?
            .install(run)?
    };
    let summarize = |name: &str, i: usize| {
        let secs: Vec<f64> = timings.iter().map(|t| t[i].as_secs_f64()).collect();
        StageTiming {
            stage: name.to_string(),
            mean_s: secs.iter().sum::<f64>() / secs.len() as f64,
            min_s: secs.iter().cloned().fold(f64::INFINITY, f64::min),
        }
    };
    Ok(LatencyReport {
        samples: windows.len(),
        window_len: windows[0].len(),
        features: model.feature_ids().len(),
        hidden: model.input_weights().hidden(),
        repetitions,
        parallel,
        stages: BENCH_STAGES
            .iter()
            .enumerate()
            .map(|(i, s)| summarize(s, i))
            .collect(),
        total: summarize("total", 4),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSelection {
    /// Forward selection on the verify split.
    Sfs,
    Fixed(Vec<FeatureId>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub elm: ElmConfig,
    pub selection: FeatureSelection,
    pub convention: FeatureConvention,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            elm: ElmConfig::default(),
            selection: FeatureSelection::Sfs,
            convention: FeatureConvention::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub model: TrainedModel,
    pub sfs: Option<SfsTrace>,
    pub verify_accuracy: Option<f64>,
    pub test_accuracy: Option<f64>,
}

/// Selects features (if configured), trains on the train split and scores
/// the final model on verify and test.
pub fn run_pipeline(data: &ExperimentData, config: &PipelineConfig) -> Result<PipelineOutcome> {
    let (features, sfs) = match &config.selection {
        FeatureSelection::Fixed(ids) => (ids.clone(), None),
        FeatureSelection::Sfs => {
            let sfs_config = SfsConfig {
                elm: config.elm,
                convention: config.convention,
                pool: FeatureId::ALL.to_vec(),
            };
            let trace = sfs_select_tables(
                &data.train.table,
                &data.train.labels,
                &data.verify.table,
                &data.verify.labels,
                data.class_count,
                &sfs_config,
            )?;
            (trace.final_subset.clone(), Some(trace))
        }
    };
    let model = data.train_model(&features, &config.elm)?;
    let score = |split: &LabeledFeatures| -> Result<Option<f64>> {
        if split.labels.is_empty() {
            return Ok(None);
        }
        Ok(Some(accuracy(
            &model.predict(&split.table.matrix(&features)?)?,
            &split.labels,
        )?))
    };
    Ok(PipelineOutcome {
        verify_accuracy: score(&data.verify)?,
        test_accuracy: score(&data.test)?,
        model,
        sfs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionRow {
    pub condition: String,
    pub features: Vec<FeatureId>,
    pub verify_accuracy: Option<f64>,
    pub test_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionTable {
    pub rows: Vec<ConditionRow>,
    pub average_test_accuracy: Option<f64>,
}

impl ConditionTable {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_table(&self) -> String {
        let fmt = |a: Option<f64>| a.map_or("-".into(), |v| format!("{v:.4}"));
        let head = vec![
            "condition".to_string(),
            "features".into(),
            "verify".into(),
            "test".into(),
        ];
        let mut body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.condition.clone(),
                    r.features
                        .iter()
                        .map(|f| f.number().to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    fmt(r.verify_accuracy),
                    fmt(r.test_accuracy),
                ]
            })
            .collect();
        body.push(vec![
            "average".into(),
            String::new(),
            String::new(),
            fmt(self.average_test_accuracy),
        ]);
        render_table(&head, &body)
    }
}

/// Runs the full pipeline independently for each named condition.
pub fn multi_condition_eval(
    conditions: &[(String, DatasetManifest)],
    config: &PipelineConfig,
) -> Result<ConditionTable> {
    if conditions.is_empty() {
        return Err(Error::InvalidArgument("no conditions given".into()));
    }
    let mut rows = Vec::with_capacity(conditions.len());
    for (name, manifest) in conditions {
        let ds = manifest.load_split()?;
        let data = ExperimentData::from_split(&ds, config.convention)?;
        let outcome = run_pipeline(&data, config)?;
        rows.push(ConditionRow {
            condition: name.clone(),
            features: outcome.model.feature_ids().to_vec(),
            verify_accuracy: outcome.verify_accuracy,
            test_accuracy: outcome.test_accuracy,
        });
    }
    let tests: Vec<f64> = rows.iter().filter_map(|r| r.test_accuracy).collect();
    let average_test_accuracy =
        (!tests.is_empty()).then(|| tests.iter().sum::<f64>() / tests.len() as f64);
    Ok(ConditionTable {
        rows,
        average_test_accuracy,
    })
}
