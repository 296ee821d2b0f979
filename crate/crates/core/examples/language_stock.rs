//! Simulate the five low-quality language stock models and their equal-weight
//! aggregate.
//!
//!     cargo run --release --example language_stock

use datastock::config::InputPaths;
use datastock::demographics::{fit_sigmoid, InternetUsersModel};
use datastock::io::load_inputs;
use datastock::mc::YearGrid;
use datastock::stock::{aggregate_stock, growth_rate, language_models, stock_trajectory, Demography, LanguagePriors};

fn main() -> datastock::Result<()> {
    let (trials, seed) = (10_000, 2022);
    let inputs = load_inputs(&InputPaths::default())?;
    let model = InternetUsersModel::new(inputs.population, fit_sigmoid(&inputs.penetration)?.params);
    let grid = YearGrid::default();
    let demo = Demography::new(&model, grid)?;

    let mut sets = Vec::new();
    for spec in language_models(&LanguagePriors::default()) {
        let t = stock_trajectory(&spec, grid, trials, seed, &demo)?;
        let [lo, mid, hi] = t.at_year(2022)?.summary();
        println!("{:<20} 2022 stock {mid:.2e} words  [{lo:.2e}, {hi:.2e}]", spec.label());
        sets.push(t);
    }
    let agg = aggregate_stock(&sets, &[1.0; 5], seed)?;
    let [lo, mid, hi] = agg.at_year(2022)?.summary();
    println!("{:<20} 2022 stock {mid:.2e} words  [{lo:.2e}, {hi:.2e}]", "Aggregated");
    for year in [2022, 2050, 2099] {
        println!("aggregate growth in {year}: {:.2}%", 100.0 * growth_rate(&agg, year)?.median());
    }
    Ok(())
}
