//! Estimate the high-quality language stock from code, papers and books, and
//! classify the composition of curated corpora.
//!
//!     cargo run --release --example high_quality_stock

use datastock::hq::{classify_composition, default_compositions, hq_components, hq_total_stock, HqPriors};
use datastock::mc::YearGrid;

fn main() -> datastock::Result<()> {
    let p = HqPriors::default();
    let c = hq_components(&p, 10_000, 3)?;
    for (name, s) in [("code", &c.code_words), ("papers", &c.paper_words), ("books", &c.book_words)] {
        let [lo, mid, hi] = s.summary();
        println!("{name:<7} {mid:.2e} words  [{lo:.2e}, {hi:.2e}]");
    }

    let stock = hq_total_stock(&p, YearGrid::new(2000, 2100)?, 10_000, 3)?;
    for year in [2022, 2030, 2050] {
        let [lo, mid, hi] = stock.at_year(year)?.summary();
        println!("total {year}: {mid:.2e}  [{lo:.2e}, {hi:.2e}]");
    }

    for d in default_compositions() {
        let s = classify_composition(&d)?;
        println!(
            "{:<12} professional {:.0}%  dedicated contributors {:.0}%",
            d.name,
            100.0 * s.professional,
            100.0 * s.contributor
        );
    }
    Ok(())
}
