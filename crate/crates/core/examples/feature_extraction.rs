//! Computes the fourteen time-domain features on a synthetic healthy window
//! and a synthetic inner-race fault window.

use logistic_elm::features::{extract_feature_with, FeatureConvention};
use logistic_elm::synthetic::{generate_windows, SyntheticConfig};
use logistic_elm::{extract_feature, FeatureId, SignalWindow};

fn main() -> logistic_elm::Result<()> {
    let config = SyntheticConfig {
        windows_per_class: 1,
        ..Default::default()
    };
    let windows = generate_windows(&config)?;
    let normal = &windows[&1][0];
    let fault = &windows[&2][0];

    println!("{:<32} {:>12} {:>12}", "feature", "normal", "IF007");
    for id in FeatureId::ALL {
        println!(
            "{:<32} {:>12.5} {:>12.5}",
            id.to_string(),
            extract_feature(normal, id)?,
            extract_feature(fault, id)?
        );
    }

    let strict = extract_feature_with(fault, FeatureId::ClearanceFactor, FeatureConvention::Strict);
    println!("\nclearance factor with the signed mean: {strict:?}");

    // a flat window has no spread, so the shape ratios are undefined
    let flat = SignalWindow::new(vec![0.5; 64], None)?;
    println!(
        "skewness of a constant window: {:?}",
        extract_feature(&flat, FeatureId::Skewness).err()
    );
    Ok(())
}
