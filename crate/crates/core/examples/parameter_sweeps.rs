//! Accuracy over activations and neuron counts, and over the logistic-map
//! parameters, both on the verify split.

use logistic_elm::chaos::ChaosConfig;
use logistic_elm::dataio::{split, SplitConfig};
use logistic_elm::eval::{neuron_correlation, sweep_chaos, sweep_neurons, ExperimentData};
use logistic_elm::synthetic::{generate_windows, SyntheticConfig};
use logistic_elm::{Activation, ElmConfig, FeatureId};

fn main() -> logistic_elm::Result<()> {
    let ds = split(
        &generate_windows(&SyntheticConfig::default())?,
        &SplitConfig::default(),
    )?;
    let data = ExperimentData::from_split(&ds, Default::default())?;
    let features = [FeatureId::StdDev, FeatureId::AverageAmplitude];

    let neurons: Vec<usize> = (1..=30).collect();
    let sweep = sweep_neurons(
        &data,
        &features,
        &Activation::ALL,
        &neurons,
        ChaosConfig::default(),
        true,
    )?;
    print!("{}", sweep.to_table());
    let rho = neuron_correlation(&sweep, 0, 1, 20)?;
    println!("sigmoid: pearson(accuracy, neurons 1-20) = {rho:.3}\n");

    let z1s: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let mus = [3.95, 3.96, 3.97, 3.98, 3.99];
    let grid = sweep_chaos(&data, &features, &z1s, &mus, &ElmConfig::default())?;
    print!("{}", grid.to_table());
    println!(
        "{} of {} cells reach the best accuracy",
        grid.best_cells().len(),
        z1s.len() * mus.len()
    );
    Ok(())
}
