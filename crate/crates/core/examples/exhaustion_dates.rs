//! Exhaustion-year distribution of the high-quality language stock under the
//! historical dataset trend.
//!
//!     cargo run --release --example exhaustion_dates

use datastock::hq::{hq_total_stock, HqPriors};
use datastock::mc::{Unit, YearGrid};
use datastock::projection::{exhaustion_distribution, exhaustion_probability_by_year, historical_projection, TrendParams};

fn main() -> datastock::Result<()> {
    let grid = YearGrid::new(2022, 2100)?;
    let trials = 10_000;
    let stock = hq_total_stock(&HqPriors::default(), grid, trials, 5)?;
    let proj = historical_projection(&TrendParams::language(), grid, trials, 5, Unit::Words)?;

    let r = exhaustion_distribution(&proj, &stock)?;
    if let Some([lo, mid, hi]) = r.quantiles {
        println!("median {mid:.2}  90% interval [{lo:.2}, {hi:.2}]  censored {}", r.censored_count);
    }
    let h = exhaustion_probability_by_year(&r, grid)?;
    for (year, p) in h.bins.iter().filter(|b| b.1 > 0.005) {
        println!("{year}  {:5.1}%  {}", 100.0 * p, "#".repeat((p * 100.0).round() as usize));
    }
    println!("P(before 2027) = {:.3}", h.mass_before(2027));
    Ok(())
}
