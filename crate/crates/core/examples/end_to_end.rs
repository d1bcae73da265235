//! Files in, model out: writes the synthetic dataset to disk, loads it back
//! through its manifest, selects features, trains, and scores on the held-out
//! test split.

use logistic_elm::eval::{run_pipeline, ExperimentData, PipelineConfig};
use logistic_elm::synthetic::{write_dataset, SyntheticConfig};
use logistic_elm::{DatasetManifest, TrainedModel};

fn main() -> logistic_elm::Result<()> {
    let dir = std::env::temp_dir().join("logistic-elm-end-to-end");
    let manifest_path = write_dataset(&dir, &SyntheticConfig::default())?;
    let manifest = DatasetManifest::load(&manifest_path)?;
    println!(
        "{} classes from {}",
        manifest.class_count(),
        manifest_path.display()
    );

    let ds = manifest.load_split()?;
    println!(
        "split: {} train, {} verify, {} test windows",
        ds.train.len(),
        ds.verify.len(),
        ds.test.len()
    );
    let data = ExperimentData::from_split(&ds, Default::default())?;
    let outcome = run_pipeline(&data, &PipelineConfig::default())?;

    let features: Vec<String> = outcome
        .model
        .feature_ids()
        .iter()
        .map(|f| f.to_string())
        .collect();
    println!("selected: {}", features.join(", "));
    println!(
        "verify accuracy {:.4}",
        outcome.verify_accuracy.unwrap_or(f64::NAN)
    );
    println!(
        "test accuracy   {:.4}",
        outcome.test_accuracy.unwrap_or(f64::NAN)
    );

    let model_path = dir.join("model.json");
    outcome.model.save(&model_path)?;
    assert_eq!(TrainedModel::load(&model_path)?, outcome.model);
    println!("model written to {}", model_path.display());
    Ok(())
}
