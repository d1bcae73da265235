//! Runs the full pipeline on four datasets that differ only in signal
//! amplitude, standing in for four motor loads.

use logistic_elm::eval::{multi_condition_eval, PipelineConfig};
use logistic_elm::synthetic::{write_dataset, SyntheticConfig};
use logistic_elm::DatasetManifest;

fn main() -> logistic_elm::Result<()> {
    let root = std::env::temp_dir().join("logistic-elm-conditions");
    let mut conditions = Vec::new();
    for (load, scale) in [(0, 1.0), (1, 1.15), (2, 1.3), (3, 1.45)] {
        let config = SyntheticConfig {
            amplitude_scale: scale,
            seed: 100 + load,
            ..Default::default()
        };
        let manifest = write_dataset(root.join(format!("load{load}")), &config)?;
        conditions.push((format!("{load} hp"), DatasetManifest::load(manifest)?));
    }
    let table = multi_condition_eval(&conditions, &PipelineConfig::default())?;
    print!("{}", table.to_table());
    Ok(())
}
