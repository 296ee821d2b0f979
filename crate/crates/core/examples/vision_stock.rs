//! Simulate the vision stock models and their aggregate, with a custom prior
//! override.
//!
//!     cargo run --release --example vision_stock

use datastock::config::InputPaths;
use datastock::demographics::{fit_sigmoid, InternetUsersModel};
use datastock::io::load_inputs;
use datastock::mc::{Prior, YearGrid};
use datastock::stock::{aggregate_stock, stock_trajectory, vision_models, Demography, VisionPriors};

fn main() -> datastock::Result<()> {
    let inputs = load_inputs(&InputPaths::default())?;
    let model = InternetUsersModel::new(inputs.population, fit_sigmoid(&inputs.penetration)?.params);
    let grid = YearGrid::new(1990, 2100)?;
    let demo = Demography::new(&model, grid)?;

    for (name, priors) in [
        ("default priors", VisionPriors::default()),
        ("more reshares", {
            let mut p = VisionPriors::default();
            p.social_images.reshare_factor = Prior::Range([10.0, 30.0]);
            p
        }),
    ] {
        println!("{name}:");
        let sets = vision_models(&priors)
            .iter()
            .map(|spec| stock_trajectory(spec, grid, 10_000, 1, &demo))
            .collect::<datastock::Result<Vec<_>>>()?;
        for (spec, t) in vision_models(&priors).iter().zip(&sets) {
            let [lo, mid, hi] = t.at_year(2022)?.summary();
            println!("  {:<18} {mid:.2e} images  [{lo:.2e}, {hi:.2e}]", spec.label());
        }
        let [lo, mid, hi] = aggregate_stock(&sets, &[1.0, 1.0], 1)?.at_year(2022)?.summary();
        println!("  {:<18} {mid:.2e} images  [{lo:.2e}, {hi:.2e}]", "Aggregated");
    }
    Ok(())
}
