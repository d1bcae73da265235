//! Generates the logistic-map orbit and the input weight matrix built from it.

use logistic_elm::{build_weight_matrix, logistic_sequence, ChaosConfig};

fn main() -> logistic_elm::Result<()> {
    let config = ChaosConfig::new(0.6, 3.9)?;
    for (k, z) in logistic_sequence(config, 6)?.iter().enumerate() {
        println!("z{} = {z:.15}", k + 1);
    }

    // 4 features, 20 hidden neurons, filled row by row from the orbit
    let w = build_weight_matrix(config, 4, 20)?;
    println!("\nW is {}x{}", w.inputs(), w.hidden());
    for row in w.values().row_iter() {
        let cells: Vec<String> = row.iter().take(6).map(|v| format!("{v:.4}")).collect();
        println!("  {} ...", cells.join(" "));
    }

    // a tiny change of seed gives an unrelated matrix
    let other = build_weight_matrix(ChaosConfig::new(0.6 + 1e-10, 3.9)?, 4, 20)?;
    let diff = w.values().sub(other.values())?.frobenius_norm();
    println!("\n|W(0.6) - W(0.6 + 1e-10)| = {diff:.4}");

    match ChaosConfig::new(0.6, 3.2) {
        Ok(_) => unreachable!(),
        Err(e) => println!("mu = 3.2 rejected: {e}"),
    }
    Ok(())
}
