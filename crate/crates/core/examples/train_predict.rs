//! Trains a logistic ELM on fixed features, saves it, reloads it and
//! classifies unseen windows.

use logistic_elm::dataio::{split, SplitConfig};
use logistic_elm::synthetic::{generate_windows, SyntheticConfig};
use logistic_elm::{
    accuracy, extract_matrix, Activation, ElmConfig, FeatureId, SplitDataset, TrainedModel,
};

fn main() -> logistic_elm::Result<()> {
    let ds = split(
        &generate_windows(&SyntheticConfig::default())?,
        &SplitConfig::default(),
    )?;
    let features = [
        FeatureId::StdDev,
        FeatureId::AverageAmplitude,
        FeatureId::Kurtosis,
    ];

    let f_train = extract_matrix(&ds.train, &features)?;
    let config = ElmConfig {
        hidden: 20,
        activation: Activation::Sigmoid,
        ..Default::default()
    };
    let model = logistic_elm::train(
        &f_train,
        &SplitDataset::labels(&ds.train),
        &config,
        ds.class_count,
    )?;

    let dir = std::env::temp_dir().join("logistic-elm-train-predict");
    std::fs::create_dir_all(&dir)
        .map_err(|e| logistic_elm::Error::InvalidArgument(e.to_string()))?;
    let path = dir.join("model.json");
    model.save(&path)?;
    let loaded = TrainedModel::load(&path)?;
    println!(
        "model saved to {} ({} features, {} hidden)",
        path.display(),
        loaded.feature_ids().len(),
        loaded.input_weights().hidden()
    );

    let predicted = loaded.predict_windows(&ds.test)?;
    let truth = SplitDataset::labels(&ds.test);
    println!("test accuracy: {:.4}", accuracy(&predicted, &truth)?);
    println!(
        "first test windows: predicted {:?}, true {:?}",
        &predicted[..5],
        &truth[..5]
    );
    Ok(())
}
