//! Project the largest language training dataset along its historical trend
//! and along compute-optimal scaling, then cap both at a toy stock.
//!
//!     cargo run --release --example dataset_projections

use datastock::config::InputPaths;
use datastock::io::load_inputs;
use datastock::mc::{trajectory_quantiles, TrajectorySet, Unit, YearGrid};
use datastock::projection::{compute_optimal_projection, constrain_projection, historical_projection, ScalingAnchor, TrendParams};

fn main() -> datastock::Result<()> {
    let grid = YearGrid::new(2022, 2060)?;
    let trials = 5_000;
    let compute = load_inputs(&InputPaths::default())?.compute;

    let hist = historical_projection(&TrendParams::language(), grid, trials, 11, Unit::Words)?;
    let comp = compute_optimal_projection(&compute, Some(&ScalingAnchor::chinchilla()), grid, trials, 11, Unit::Words)?;
    let stock = TrajectorySet::from_fn(grid, Unit::Words, trials, |_| {
        Ok(grid.years().map(|y| 1e14 * 1.07f64.powi(y - 2022)).collect())
    })?;
    let capped = constrain_projection(&hist, &stock)?;

    let h = trajectory_quantiles(&hist, 0.5)?;
    let c = trajectory_quantiles(&comp, 0.5)?;
    let k = trajectory_quantiles(&capped, 0.5)?;
    println!("year  historical  compute     capped");
    for j in (0..grid.len()).step_by(4) {
        println!("{}  {:.3e}   {:.3e}   {:.3e}", h[j].0, h[j].1, c[j].1, k[j].1);
    }
    Ok(())
}
