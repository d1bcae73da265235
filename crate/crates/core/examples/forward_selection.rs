//! Sequential forward selection over all fourteen features, printed as a
//! round-by-round table.

use logistic_elm::dataio::{split, SplitConfig};
use logistic_elm::sfs_select;
use logistic_elm::synthetic::{generate_windows, SyntheticConfig};

fn main() -> logistic_elm::Result<()> {
    let ds = split(
        &generate_windows(&SyntheticConfig::default())?,
        &SplitConfig::default(),
    )?;
    let trace = sfs_select(&ds.train, &ds.verify, &Default::default())?;
    print!("{}", trace.to_table());
    for (i, round) in trace.rounds.iter().enumerate() {
        let picked = round
            .selected
            .map_or("nothing".to_string(), |f| f.to_string());
        println!(
            "round {}: picked {picked}, best so far {:.4}",
            i + 1,
            round.best_so_far
        );
    }
    Ok(())
}
