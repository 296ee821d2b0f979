//! Sample a 90% interval prior, check its empirical quantiles, and mix two
//! sample sets.
//!
//!     cargo run --example ci_sampling

use datastock::mc::{mixture, quantiles, sample_from_ci, Ci90, Unit};

fn main() -> datastock::Result<()> {
    let words_per_page = Ci90::new(400.0, 2_000.0)?.with_unit(Unit::Words);
    println!(
        "prior [{:.0}, {:.0}] median {:.1} (log mean {:.4}, log sigma {:.4})",
        words_per_page.low(),
        words_per_page.high(),
        words_per_page.median(),
        words_per_page.log_mean(),
        words_per_page.log_sigma()
    );

    let s = sample_from_ci(&words_per_page, 10_000, 7)?;
    let q = quantiles(&s, &[0.05, 0.5, 0.95])?;
    println!("10k samples: q05 {:.0}  median {:.0}  q95 {:.0}", q[0], q[1], q[2]);

    let narrow = sample_from_ci(&Ci90::new(900.0, 1_100.0)?.with_unit(Unit::Words), 10_000, 8)?;
    let mixed = mixture(&[s, narrow], &[0.5, 0.5], 10_000, 9)?;
    let [lo, mid, hi] = mixed.summary();
    println!("50/50 mixture: q05 {lo:.0}  median {mid:.0}  q95 {hi:.0}");
    Ok(())
}
