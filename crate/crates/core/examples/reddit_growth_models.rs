//! Compare exponential, sigmoid and sigmoid-times-exponential fits on the
//! bundled monthly Reddit series, holding out the final two years.
//!
//!     cargo run --example reddit_growth_models

use datastock::config::InputPaths;
use datastock::demographics::{compare_growth_models, MonthStamp};
use datastock::io::load_inputs;

fn main() -> datastock::Result<()> {
    let series = load_inputs(&InputPaths::default())?.reddit;
    let cmp = compare_growth_models(&series)?;
    println!("{} months, last {} held out", series.len(), cmp.holdout_months);
    for f in &cmp.ranking {
        println!(
            "{:<22} holdout RMSE {:>10.3e}   train log-RMSE {:.3}",
            f.family.name(),
            f.holdout_rmse,
            f.train_log_rmse
        );
    }
    let dec = MonthStamp::new(2024, 12)?;
    println!("winner: {}, predicts {:.3e} submissions in {dec}", cmp.winner().name(), cmp.predict(cmp.winner(), dec));
    Ok(())
}
