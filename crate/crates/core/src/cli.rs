//! Command-line front end.
//!
//! Every numeric flag resolves in three layers: the built-in default, then
//! the `--config` overlay file, then the flag itself. All values are checked
//! before any data is read. Exit status is 0 on success, 2 for a usage error
//! and 1 for a data error; failures print a single `error:` line.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::chaos::ChaosConfig;
use crate::dataio::{
    load_signal, window_signal, DatasetManifest, SplitDataset, DEFAULT_WINDOW_LEN,
};
use crate::elm::{accuracy, Activation, ElmConfig, TrainedModel, DEFAULT_HIDDEN};
use crate::error::Error;
use crate::eval::{
    bench_inference, multi_condition_eval, neuron_correlation, stability_study, sweep_chaos,
    sweep_neurons, ExperimentData, FeatureSelection, PipelineConfig, SweepResult,
};
use crate::features::{extract_matrix_with, FeatureConvention, FeatureId, SignalWindow};
use crate::sfs::{sfs_select_tables, SfsConfig, SfsTrace};
use crate::synthetic::{write_dataset, SyntheticConfig, DEFAULT_SEED};

pub const THREADS_ENV: &str = "LOGISTIC_ELM_THREADS";

const DEFAULTS: &str = "\
Defaults:
  --neurons 20   --activation sigmoid   --z1 0.6   --mu 3.9
  --features sfs (extract: all)   features normalized (z-score) unless --no-normalize
  --window-len 2048   --trials 50   --seed 42   --repetitions 5   --windows 300
  --threads all cores, or $LOGISTIC_ELM_THREADS when set
Exit status: 0 success, 1 data error, 2 usage error.";

#[derive(Debug, Parser)]
#[command(name = "logistic-elm", version, about = "Bearing fault diagnosis with a logistic-map ELM", after_help = DEFAULTS)]
struct Cli {
    /// JSON file whose keys override the built-in defaults (flags still win)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads, 0 for all cores [env: LOGISTIC_ELM_THREADS] [default: all cores]
    #[arg(long, global = true, env = THREADS_ENV, hide_env = true)]
    threads: Option<usize>,

    /// Prefix reports with a generation timestamp
    #[arg(long, global = true)]
    timestamps: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute features for every window and write them as CSV
    Extract(ExtractArgs),
    /// Select features (optional), train, save the model, report verify accuracy
    Train(TrainArgs),
    /// Print one class index per window of a signal file
    Predict(PredictArgs),
    /// Score a saved model, or run the full pipeline per manifest
    Evaluate(EvaluateArgs),
    /// Sequential forward selection trace
    Sfs(DataArgs),
    /// Verify accuracy over activations and hidden-neuron counts
    SweepNeurons(SweepNeuronsArgs),
    /// Verify accuracy over a (z1, mu) grid
    SweepChaos(SweepChaosArgs),
    /// Logistic ELM versus randomly initialized ELM over repeated trials
    Stability(StabilityArgs),
    /// Inference latency per stage
    Bench(BenchArgs),
    /// Write the seeded synthetic bearing dataset and its manifest
    GenSynthetic(GenArgs),
}

#[derive(Debug, Clone, Args)]
struct ModelArgs {
    /// Hidden neurons [default: 20]
    #[arg(long)]
    neurons: Option<usize>,

    /// sigmoid, sine, hardlim, triangular or radial [default: sigmoid]
    #[arg(long)]
    activation: Option<Activation>,

    /// Logistic map seed in (0, 1) [default: 0.6]
    #[arg(long)]
    z1: Option<f64>,

    /// Logistic map growth rate in (3.56995, 4] [default: 3.9]
    #[arg(long)]
    mu: Option<f64>,

    /// Feed raw feature values to the network
    #[arg(long)]
    no_normalize: bool,

    /// Use the signed mean in the impulsion index and clearance factor
    #[arg(long)]
    strict_features: bool,

    /// `sfs`, `all`, or a list of ids or names such as 2,6,mean [default: sfs]
    #[arg(long)]
    features: Option<String>,
}

#[derive(Debug, Clone, Args)]
struct DataArgs {
    /// Dataset manifest (JSON)
    #[arg(long)]
    manifest: PathBuf,

    #[command(flatten)]
    model: ModelArgs,

    /// Also write the report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    /// Labelled windows from a manifest
    #[arg(long, conflicts_with = "signal", required_unless_present = "signal")]
    manifest: Option<PathBuf>,

    /// Unlabelled windows from a single signal file
    #[arg(long)]
    signal: Option<PathBuf>,

    /// Window length for --signal [default: 2048]
    #[arg(long)]
    window_len: Option<usize>,

    #[command(flatten)]
    model: ModelArgs,

    /// CSV destination [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    data: DataArgs,

    /// Also write the selection trace as JSON
    #[arg(long)]
    sfs_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    /// Trained model (JSON)
    #[arg(long)]
    model: PathBuf,

    /// Signal file, one sample per line
    #[arg(long)]
    signal: PathBuf,

    /// Window length [default: 2048]
    #[arg(long)]
    window_len: Option<usize>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Dataset manifest; repeat for a per-condition table
    #[arg(long, required = true)]
    manifest: Vec<PathBuf>,

    /// Score this model on the test split instead of training
    #[arg(long)]
    model: Option<PathBuf>,

    #[command(flatten)]
    params: ModelArgs,

    /// Also write the report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepNeuronsArgs {
    #[command(flatten)]
    data: DataArgs,

    /// Activations to compare [default: all five]
    #[arg(long, value_delimiter = ',')]
    activations: Vec<Activation>,

    /// Hidden neuron counts, `lo-hi` or a list [default: 1-30]
    #[arg(long)]
    neuron_range: Option<String>,

    /// Also write the grid as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepChaosArgs {
    #[command(flatten)]
    data: DataArgs,

    /// z1 values [default: 0.1,0.2,...,0.9]
    #[arg(long, value_delimiter = ',')]
    z1_values: Vec<f64>,

    /// mu values [default: 3.95,3.96,3.97,3.98,3.99]
    #[arg(long, value_delimiter = ',')]
    mu_values: Vec<f64>,

    /// Also write the grid as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[command(flatten)]
    data: DataArgs,

    /// Number of trials [default: 50]
    #[arg(long)]
    trials: Option<usize>,

    /// Base seed of the random baseline [default: 42]
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Trained model (JSON)
    #[arg(long)]
    model: PathBuf,

    /// Take windows from every class of a manifest
    #[arg(long, conflicts_with = "signal", required_unless_present = "signal")]
    manifest: Option<PathBuf>,

    /// Take windows from a single signal file
    #[arg(long)]
    signal: Option<PathBuf>,

    /// Windows per repetition, cycling through the source if it is shorter [default: 300]
    #[arg(long)]
    windows: Option<usize>,

    /// Window length for --signal [default: 2048]
    #[arg(long)]
    window_len: Option<usize>,

    /// Timed repetitions after one warm-up pass [default: 5]
    #[arg(long)]
    repetitions: Option<usize>,

    /// Use the worker pool instead of a single thread
    #[arg(long)]
    parallel: bool,

    /// Also write the report as JSON
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Output directory
    #[arg(long)]
    out: PathBuf,

    /// Windows per class [default: 60]
    #[arg(long)]
    windows_per_class: Option<usize>,

    /// Points per window [default: 2048]
    #[arg(long)]
    window_len: Option<usize>,

    /// Generator seed [default: 20220131]
    #[arg(long)]
    seed: Option<u64>,

    /// Multiplies every amplitude and noise level [default: 1.0]
    #[arg(long)]
    amplitude_scale: Option<f64>,
}

/// Keys accepted by `--config`. Any key may be omitted.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Overlay {
    neurons: Option<usize>,
    activation: Option<Activation>,
    z1: Option<f64>,
    mu: Option<f64>,
    normalize: Option<bool>,
    strict_features: Option<bool>,
    features: Option<String>,
    threads: Option<usize>,
    window_len: Option<usize>,
    trials: Option<usize>,
    seed: Option<u64>,
    repetitions: Option<usize>,
    windows: Option<usize>,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Data(Error::io("<stdout>", e))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

struct Params {
    elm: ElmConfig,
    convention: FeatureConvention,
    features: Option<FeatureSelection>,
}

fn params(args: &ModelArgs, overlay: &Overlay) -> std::result::Result<Params, Failure> {
    let elm = ElmConfig {
        hidden: args.neurons.or(overlay.neurons).unwrap_or(DEFAULT_HIDDEN),
        activation: args.activation.or(overlay.activation).unwrap_or_default(),
        chaos: ChaosConfig {
            z1: args.z1.or(overlay.z1).unwrap_or(ChaosConfig::default().z1),
            mu: args.mu.or(overlay.mu).unwrap_or(ChaosConfig::default().mu),
        },
        normalize: !args.no_normalize && overlay.normalize.unwrap_or(true),
    };
    elm.validate().map_err(|e| usage(e.to_string()))?;
    let convention = if args.strict_features || overlay.strict_features.unwrap_or(false) {
        FeatureConvention::Strict
    } else {
        FeatureConvention::Rectified
    };
    let features = match args.features.as_ref().or(overlay.features.as_ref()) {
        None => None,
        Some(s) if s.trim() == "sfs" => Some(FeatureSelection::Sfs),
        Some(s) if s.trim() == "all" => Some(FeatureSelection::Fixed(FeatureId::ALL.to_vec())),
        Some(s) => Some(FeatureSelection::Fixed(
            FeatureId::parse_list(s).map_err(|e| usage(format!("--features: {e}")))?,
        )),
    };
    Ok(Params {
        elm,
        convention,
        features,
    })
}

fn load_overlay(path: Option<&Path>) -> std::result::Result<Overlay, Failure> {
    let Some(path) = path else {
        return Ok(Overlay::default());
    };
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn positive(name: &str, value: usize) -> std::result::Result<usize, Failure> {
    if value == 0 {
        return Err(usage(format!("--{name} must be at least 1")));
    }
    Ok(value)
}

fn neuron_list(s: &str) -> std::result::Result<Vec<usize>, Failure> {
    let bad = || usage(format!("--neuron-range: cannot parse `{s}`"));
    let list: Vec<usize> = if let Some((lo, hi)) = s.split_once('-') {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<std::result::Result<_, _>>()?
    };
    if list.is_empty() || list[0] == 0 || list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("--neuron-range must list ascending positive counts"));
    }
    Ok(list)
}

fn stamp(enabled: bool) -> String {
    if !enabled {
        return String::new();
    }
    let secs = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    format!("# generated at unix time {secs}\n")
}

fn write_file(path: &Path, contents: &str) -> crate::error::Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn load_data(
    manifest: &Path,
    convention: FeatureConvention,
) -> crate::error::Result<(SplitDataset, ExperimentData)> {
    let ds = DatasetManifest::load(manifest)?.load_split()?;
    let data = ExperimentData::from_split(&ds, convention)?;
    Ok((ds, data))
}

fn select(
    data: &ExperimentData,
    p: &Params,
) -> crate::error::Result<(Vec<FeatureId>, Option<SfsTrace>)> {
    match p.features.as_ref().unwrap_or(&FeatureSelection::Sfs) {
        FeatureSelection::Fixed(ids) => Ok((ids.clone(), None)),
        FeatureSelection::Sfs => {
            let cfg = SfsConfig {
                elm: p.elm,
                convention: p.convention,
                pool: FeatureId::ALL.to_vec(),
            };
            let trace = sfs_select_tables(
                &data.train.table,
                &data.train.labels,
                &data.verify.table,
                &data.verify.labels,
                data.class_count,
                &cfg,
            )?;
            Ok((trace.final_subset.clone(), Some(trace)))
        }
    }
}

fn ids_text(ids: &[FeatureId]) -> String {
    ids.iter()
        .map(|f| f.number().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn signal_windows(path: &Path, window_len: usize) -> crate::error::Result<Vec<SignalWindow>> {
    let signal = load_signal(path)?;
    window_signal(&signal, window_len, window_len)?
        .into_iter()
        .map(|w| SignalWindow::new(w, None))
        .collect()
}

/// Parses `args` (program name first) and runs the command, writing the
/// primary output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            let line = line.strip_prefix("error: ").unwrap_or(line);
            let _ = writeln!(err, "error: {line}");
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: Cli, out: &mut impl Write) -> Outcome {
    let overlay = load_overlay(cli.config.as_deref())?;
    let threads = cli.threads.or(overlay.threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| usage(format!("--threads: {e}")))?;
    let ts = cli.timestamps;
    let mut buf: Vec<u8> = Vec::new();
    // commands write into a buffer so a failure leaves no partial primary output
    pool.install(|| dispatch(cli.command, &overlay, ts, &mut buf))?;
    out.write_all(&buf)?;
    out.flush()?;
    Ok(())
}

fn dispatch(command: Command, overlay: &Overlay, ts: bool, out: &mut Vec<u8>) -> Outcome {
    match command {
        Command::Extract(a) => extract(a, overlay, out),
        Command::Train(a) => train_cmd(a, overlay, out),
        Command::Predict(a) => predict(a, overlay, out),
        Command::Evaluate(a) => evaluate(a, overlay, ts, out),
        Command::Sfs(a) => sfs(a, overlay, ts, out),
        Command::SweepNeurons(a) => sweep_neurons_cmd(a, overlay, ts, out),
        Command::SweepChaos(a) => sweep_chaos_cmd(a, overlay, ts, out),
        Command::Stability(a) => stability(a, overlay, ts, out),
        Command::Bench(a) => bench(a, overlay, ts, out),
        Command::GenSynthetic(a) => gen_synthetic(a, out),
    }
}

fn extract(a: ExtractArgs, overlay: &Overlay, out: &mut Vec<u8>) -> Outcome {
    let p = params(&a.model, overlay)?;
    let ids = match p.features {
        None => FeatureId::ALL.to_vec(),
        Some(FeatureSelection::Fixed(ids)) => ids,
        Some(FeatureSelection::Sfs) => {
            return Err(usage("extract needs an explicit feature list, not sfs"))
        }
    };
    let window_len = positive(
        "window-len",
        a.window_len
            .or(overlay.window_len)
            .unwrap_or(DEFAULT_WINDOW_LEN),
    )?;

    let (windows, labels) = match (&a.manifest, &a.signal) {
        (Some(m), _) => {
            let per_class = DatasetManifest::load(m)?.load_windows()?;
            let windows: Vec<SignalWindow> = per_class.into_values().flatten().collect();
            let labels: Vec<usize> = windows.iter().filter_map(SignalWindow::label).collect();
            (windows, Some(labels))
        }
        (None, Some(s)) => (signal_windows(s, window_len)?, None),
        (None, None) => return Err(usage("extract needs --manifest or --signal")),
    };
    let f = extract_matrix_with(&windows, &ids, p.convention)?;
    let mut csv = Vec::new();
    f.write_csv(&mut csv, labels.as_deref())?;
    match &a.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| Error::io(path, e))?;
            writeln!(
                out,
                "wrote {} rows x {} features to {}",
                f.rows(),
                f.cols(),
                path.display()
            )?;
        }
        None => out.extend_from_slice(&csv),
    }
    Ok(())
}

fn train_cmd(a: TrainArgs, overlay: &Overlay, out: &mut Vec<u8>) -> Outcome {
    let p = params(&a.data.model, overlay)?;
    let (_, data) = load_data(&a.data.manifest, p.convention)?;
    let (ids, trace) = select(&data, &p)?;
    let model = data.train_model(&ids, &p.elm)?;
    let path = a
        .data
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("model.json"));
    model.save(&path)?;
    if let (Some(sfs_out), Some(trace)) = (&a.sfs_out, &trace) {
        write_file(sfs_out, &trace.to_json()?)?;
    }
    writeln!(out, "features: {}", ids_text(&ids))?;
    if data.verify.labels.is_empty() {
        writeln!(out, "verify accuracy: -")?;
    } else {
        let acc = accuracy(
            &model.predict(&data.verify.table.matrix(&ids)?)?,
            &data.verify.labels,
        )?;
        writeln!(out, "verify accuracy: {acc:.4}")?;
    }
    writeln!(out, "model: {}", path.display())?;
    Ok(())
}

fn predict(a: PredictArgs, overlay: &Overlay, out: &mut Vec<u8>) -> Outcome {
    let window_len = positive(
        "window-len",
        a.window_len
            .or(overlay.window_len)
            .unwrap_or(DEFAULT_WINDOW_LEN),
    )?;
    let model = TrainedModel::load(&a.model)?;
    let windows = signal_windows(&a.signal, window_len)?;
    for class in model.predict_windows(&windows)? {
        writeln!(out, "{class}")?;
    }
    Ok(())
}

fn evaluate(a: EvaluateArgs, overlay: &Overlay, ts: bool, out: &mut Vec<u8>) -> Outcome {
    let p = params(&a.params, overlay)?;
    if let Some(model_path) = &a.model {
        if a.manifest.len() != 1 {
            return Err(usage("--model takes exactly one --manifest"));
        }
        let model = TrainedModel::load(model_path)?;
        let ds = DatasetManifest::load(&a.manifest[0])?.load_split()?;
        if ds.test.is_empty() {
            return Err(Error::InvalidArgument("test split is empty".into()).into());
        }
        let pred = model.predict_windows(&ds.test)?;
        let acc = accuracy(&pred, &SplitDataset::labels(&ds.test))?;
        let report = serde_json::json!({
            "model": model_path,
            "features": model.feature_ids(),
            "test_windows": ds.test.len(),
            "test_accuracy": acc,
        });
        if let Some(path) = &a.out {
            write_file(
                path,
                &format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report).map_err(Error::from)?
                ),
            )?;
        }
        write!(out, "{}", stamp(ts))?;
        writeln!(out, "features: {}", ids_text(model.feature_ids()))?;
        writeln!(out, "test accuracy: {acc:.4}")?;
        return Ok(());
    }

    let config = PipelineConfig {
        elm: p.elm,
        selection: p.features.unwrap_or(FeatureSelection::Sfs),
        convention: p.convention,
    };
    let conditions = a
        .manifest
        .iter()
        .map(|m| Ok((m.display().to_string(), DatasetManifest::load(m)?)))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let table = multi_condition_eval(&conditions, &config)?;
    if let Some(path) = &a.out {
        write_file(path, &table.to_json()?)?;
    }
    write!(out, "{}{}", stamp(ts), table.to_table())?;
    Ok(())
}

fn sfs(a: DataArgs, overlay: &Overlay, ts: bool, out: &mut Vec<u8>) -> Outcome {
    let mut p = params(&a.model, overlay)?;
    if matches!(p.features, Some(FeatureSelection::Fixed(_))) {
        return Err(usage(
            "sfs always searches all fourteen features; drop --features",
        ));
    }
    p.features = Some(FeatureSelection::Sfs);
    let (_, data) = load_data(&a.manifest, p.convention)?;
    let (_, trace) = select(&data, &p)?;
    let trace = trace.expect("sfs selection yields a trace");
    if let Some(path) = &a.out {
        write_file(path, &trace.to_json()?)?;
    }
    write!(out, "{}{}", stamp(ts), trace.to_table())?;
    Ok(())
}

fn emit_sweep(
    sweep: &SweepResult,
    a: &DataArgs,
    csv: Option<&Path>,
    ts: bool,
    out: &mut Vec<u8>,
) -> Outcome {
    if let Some(path) = &a.out {
        write_file(path, &sweep.to_json()?)?;
    }
    if let Some(path) = csv {
        write_file(path, &sweep.to_csv())?;
    }
    write!(out, "{}{}", stamp(ts), sweep.to_table())?;
    Ok(())
}

fn sweep_neurons_cmd(
    a: SweepNeuronsArgs,
    overlay: &Overlay,
    ts: bool,
    out: &mut Vec<u8>,
) -> Outcome {
    let p = params(&a.data.model, overlay)?;
    let neurons = neuron_list(a.neuron_range.as_deref().unwrap_or("1-30"))?;
    let activations = if a.activations.is_empty() {
        Activation::ALL.to_vec()
    } else {
        a.activations.clone()
    };
    let (_, data) = load_data(&a.data.manifest, p.convention)?;
    let (ids, _) = select(&data, &p)?;
    let sweep = sweep_neurons(
        &data,
        &ids,
        &activations,
        &neurons,
        p.elm.chaos,
        p.elm.normalize,
    )?;
    emit_sweep(&sweep, &a.data, a.csv.as_deref(), ts, out)?;
    writeln!(out, "features: {}", ids_text(&ids))?;
    // correlation is undefined on a constant accuracy curve; skip those rows
    let mut lines = String::new();
    for (r, act) in activations.iter().enumerate() {
        for (lo, hi) in [(1, 20), (20, 30)] {
            if let Ok(rho) = neuron_correlation(&sweep, r, lo, hi) {
                let _ = writeln!(lines, "pearson({act}, neurons {lo}-{hi}) = {rho:.4}");
            }
        }
    }
    write!(out, "{lines}")?;
    Ok(())
}

fn sweep_chaos_cmd(a: SweepChaosArgs, overlay: &Overlay, ts: bool, out: &mut Vec<u8>) -> Outcome {
    let p = params(&a.data.model, overlay)?;
    let z1s = if a.z1_values.is_empty() {
        (1..=9).map(|i| i as f64 / 10.0).collect()
    } else {
        a.z1_values.clone()
    };
    let mus = if a.mu_values.is_empty() {
        vec![3.95, 3.96, 3.97, 3.98, 3.99]
    } else {
        a.mu_values.clone()
    };
    for &z1 in &z1s {
        for &mu in &mus {
            ChaosConfig::new(z1, mu).map_err(|e| usage(e.to_string()))?;
        }
    }
    let (_, data) = load_data(&a.data.manifest, p.convention)?;
    let (ids, _) = select(&data, &p)?;
    let sweep = sweep_chaos(&data, &ids, &z1s, &mus, &p.elm)?;
    emit_sweep(&sweep, &a.data, a.csv.as_deref(), ts, out)?;
    writeln!(out, "features: {}", ids_text(&ids))?;
    for (r, c) in sweep.best_cells() {
        writeln!(
            out,
            "best: z1={} mu={} accuracy {:.4}",
            z1s[r], mus[c], sweep.accuracy[r][c]
        )?;
    }
    Ok(())
}

fn stability(a: StabilityArgs, overlay: &Overlay, ts: bool, out: &mut Vec<u8>) -> Outcome {
    let p = params(&a.data.model, overlay)?;
    let trials = a.trials.or(overlay.trials).unwrap_or(50);
    if trials < 2 {
        return Err(usage("--trials must be at least 2"));
    }
    let seed = a.seed.or(overlay.seed).unwrap_or(42);
    let (_, data) = load_data(&a.data.manifest, p.convention)?;
    let (ids, _) = select(&data, &p)?;
    let report = stability_study(&data, &ids, &p.elm, trials, seed)?;
    if let Some(path) = &a.data.out {
        write_file(path, &report.to_json()?)?;
    }
    write!(out, "{}{}", stamp(ts), report.to_table())?;
    writeln!(out, "features: {}", ids_text(&ids))?;
    Ok(())
}

fn bench(a: BenchArgs, overlay: &Overlay, ts: bool, out: &mut Vec<u8>) -> Outcome {
    let count = positive("windows", a.windows.or(overlay.windows).unwrap_or(300))?;
    let repetitions = positive(
        "repetitions",
        a.repetitions.or(overlay.repetitions).unwrap_or(5),
    )?;
    let window_len = positive(
        "window-len",
        a.window_len
            .or(overlay.window_len)
            .unwrap_or(DEFAULT_WINDOW_LEN),
    )?;
    let model = TrainedModel::load(&a.model)?;
    let source: Vec<SignalWindow> = match (&a.manifest, &a.signal) {
        (Some(m), _) => DatasetManifest::load(m)?
            .load_windows()?
            .into_values()
            .flatten()
            .collect(),
        (None, Some(s)) => signal_windows(s, window_len)?,
        (None, None) => return Err(usage("bench needs --manifest or --signal")),
    };
    if source.is_empty() {
        return Err(Error::InvalidArgument("no windows to benchmark".into()).into());
    }
    let windows: Vec<SignalWindow> = source.iter().cycle().take(count).cloned().collect();
    let report = bench_inference(&model, &windows, repetitions, a.parallel)?;
    if let Some(path) = &a.out {
        write_file(path, &report.to_json()?)?;
    }
    write!(out, "{}{}", stamp(ts), report.to_table())?;
    Ok(())
}

fn gen_synthetic(a: GenArgs, out: &mut Vec<u8>) -> Outcome {
    let defaults = SyntheticConfig::default();
    let config = SyntheticConfig {
        windows_per_class: positive(
            "windows-per-class",
            a.windows_per_class.unwrap_or(defaults.windows_per_class),
        )?,
        window_len: a.window_len.unwrap_or(defaults.window_len),
        seed: a.seed.unwrap_or(DEFAULT_SEED),
        amplitude_scale: a.amplitude_scale.unwrap_or(defaults.amplitude_scale),
        ..defaults
    };
    if config.window_len < 2 {
        return Err(usage("--window-len must be at least 2"));
    }
    if !(config.amplitude_scale > 0.0 && config.amplitude_scale.is_finite()) {
        return Err(usage("--amplitude-scale must be positive"));
    }
    let manifest = write_dataset(&a.out, &config)?;
    writeln!(
        out,
        "wrote {} classes x {} windows of {} points; manifest: {}",
        config.profiles.len(),
        config.windows_per_class,
        config.window_len,
        manifest.display()
    )?;
    Ok(())
}
