//! Fit the internet penetration sigmoid to the bundled series and integrate
//! person-years of internet use.
//!
//!     cargo run --example penetration_fit

use datastock::config::InputPaths;
use datastock::demographics::{fit_sigmoid, internet_users, person_years, Base, InternetUsersModel};
use datastock::io::load_inputs;

fn main() -> datastock::Result<()> {
    let inputs = load_inputs(&InputPaths::default())?;
    let fit = fit_sigmoid(&inputs.penetration)?;
    let p = fit.params;
    println!(
        "ceiling {:.3}  midpoint {:.2}  steepness {:.4}  ({} iterations, residual norm {:.3})",
        p.ceiling, p.midpoint, p.steepness, fit.iterations, fit.residual_norm
    );
    for year in [2000.0, 2010.0, 2018.0, 2022.0, 2050.0] {
        println!("  {year}: {:.1}% online", 100.0 * p.fraction(year));
    }

    let model = InternetUsersModel::new(inputs.population, p);
    let users = internet_users(&model, 2022.0);
    println!("internet users in 2022: {:.3e}", users.value);
    let py = person_years(&model, 1990, 2022, Base::InternetUsers)?;
    println!("internet person-years 1990-2022: {py:.3e}");
    Ok(())
}
