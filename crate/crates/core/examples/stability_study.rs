//! Repeats training 50 times with chaotic weights and with seeded uniform
//! random weights on the forward-selected features, and compares the accuracy
//! distributions.

use logistic_elm::dataio::{split, SplitConfig};
use logistic_elm::eval::{stability_study, ExperimentData};
use logistic_elm::sfs::sfs_select_tables;
use logistic_elm::synthetic::{generate_windows, SyntheticConfig};
use logistic_elm::ElmConfig;

fn main() -> logistic_elm::Result<()> {
    let ds = split(
        &generate_windows(&SyntheticConfig::default())?,
        &SplitConfig::default(),
    )?;
    let data = ExperimentData::from_split(&ds, Default::default())?;
    let trace = sfs_select_tables(
        &data.train.table,
        &data.train.labels,
        &data.verify.table,
        &data.verify.labels,
        data.class_count,
        &Default::default(),
    )?;
    let features = trace.final_subset;
    println!("features: {features:?}");

    let report = stability_study(&data, &features, &ElmConfig::default(), 50, 42)?;
    print!("{}", report.to_table());
    println!(
        "\nlogistic: mean {:.4}, variance {:e}\nrandom:   mean {:.4}, variance {:e}",
        report.logistic.mean,
        report.logistic.variance,
        report.random_baseline.mean,
        report.random_baseline.variance
    );
    Ok(())
}
