//! Times inference on 300 windows of 2048 points, stage by stage, on a
//! single thread and then on the worker pool.

use logistic_elm::dataio::{split, SplitConfig};
use logistic_elm::eval::{bench_inference, ExperimentData};
use logistic_elm::synthetic::{generate_windows, SyntheticConfig};
use logistic_elm::{ElmConfig, FeatureId, SignalWindow};

fn main() -> logistic_elm::Result<()> {
    let windows = generate_windows(&SyntheticConfig::default())?;
    let ds = split(&windows, &SplitConfig::default())?;
    let data = ExperimentData::from_split(&ds, Default::default())?;
    let features = [
        FeatureId::StdDev,
        FeatureId::Kurtosis,
        FeatureId::Skewness,
        FeatureId::ClearanceFactor,
    ];
    let model = data.train_model(&features, &ElmConfig::default())?;

    let batch: Vec<SignalWindow> = windows.values().flatten().take(300).cloned().collect();
    print!("{}", bench_inference(&model, &batch, 5, false)?.to_table());
    println!();
    print!("{}", bench_inference(&model, &batch, 5, true)?.to_table());
    Ok(())
}
