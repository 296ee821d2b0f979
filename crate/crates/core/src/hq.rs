//! High-quality language stock.
//!
//! Books, scientific papers and public code are estimated directly. Their sum
//! is divided by the share they make up in curated training corpora to get the
//! total, which is anchored at 2022 and grown (both directions) at the rate of
//! the world economy.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{Prior, SampleSet, SeedStream, TrajectorySet, Unit, YearGrid};
use crate::stock::ANCHOR_YEAR;

use Prior::{Point, Range};

const FRACTION_RETRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HqPriors {
    /// Size of public code hosting, TB including history.
    pub repo_tb: Prior,
    /// Repository storage overhead over the checked-out source (1.0 = 100%).
    pub repo_overhead: Prior,
    pub words_per_tb: Prior,
    pub paper_count: Prior,
    pub words_per_paper: Prior,
    pub books_published_per_year: Prior,
    pub digitized_fraction: Prior,
    pub ebook_count: Prior,
    pub words_per_book: Prior,
    /// Share of books + papers + code in a high-quality corpus.
    pub component_fraction: Prior,
    pub economy_growth: Prior,
}

impl Default for HqPriors {
    fn default() -> Self {
        Self {
            repo_tb: Range([21.0, 65.0]),
            repo_overhead: Range([1.0, 6.0]),
            words_per_tb: Point(2e11),
            paper_count: Range([1.0e8, 1.7e8]),
            words_per_paper: Point(6e3),
            books_published_per_year: Range([5e5, 4e6]),
            digitized_fraction: Range([0.02, 0.20]),
            ebook_count: Range([1e7, 3e7]),
            words_per_book: Point(1e5),
            component_fraction: Range([0.30, 0.50]),
            economy_growth: Range([0.04, 0.05]),
        }
    }
}

impl HqPriors {
    pub fn priors(&self) -> [(&'static str, Prior); 11] {
        [
            ("repo_tb", self.repo_tb),
            ("repo_overhead", self.repo_overhead),
            ("words_per_tb", self.words_per_tb),
            ("paper_count", self.paper_count),
            ("words_per_paper", self.words_per_paper),
            ("books_published_per_year", self.books_published_per_year),
            ("digitized_fraction", self.digitized_fraction),
            ("ebook_count", self.ebook_count),
            ("words_per_book", self.words_per_book),
            ("component_fraction", self.component_fraction),
            ("economy_growth", self.economy_growth),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (name, p) in self.priors() {
            p.validate(&format!("high_quality.{name}"))?;
        }
        Ok(())
    }
}

/// Words of source code: `repo_tb / (1 + overhead) * words_per_tb`.
pub fn code_words(repo_tb: f64, overhead: f64, words_per_tb: f64) -> f64 {
    repo_tb / (1.0 + overhead) * words_per_tb
}

pub fn paper_words(count: f64, words_per_paper: f64) -> f64 {
    count * words_per_paper
}

/// Book stock from yearly output under exponential growth `g`:
/// `published * digitized / ln(1 + g)`.
pub fn books_from_publishing(published: f64, digitized: f64, growth: f64) -> f64 {
    published * digitized / growth.ln_1p()
}

/// Mean of the publishing-based and direct ebook counts, in words.
pub fn book_words(estimate_a: f64, estimate_b: f64, words_per_book: f64) -> f64 {
    0.5 * (estimate_a + estimate_b) * words_per_book
}

/// One trial's draw of every high-quality component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HqDraw {
    pub code: f64,
    pub papers: f64,
    pub books: f64,
    pub component_fraction: f64,
    pub economy_growth: f64,
}

impl HqDraw {
    pub fn total_2022(&self) -> f64 {
        (self.code + self.papers + self.books) / self.component_fraction
    }
}

fn draw<R: Rng + ?Sized>(p: &HqPriors, rng: &mut R) -> Result<HqDraw> {
    let repo_tb = p.repo_tb.sample(rng);
    let overhead = p.repo_overhead.sample(rng);
    let words_per_tb = p.words_per_tb.sample(rng);
    let paper_count = p.paper_count.sample(rng);
    let words_per_paper = p.words_per_paper.sample(rng);
    let published = p.books_published_per_year.sample(rng);
    let digitized = p.digitized_fraction.sample(rng);
    let ebooks = p.ebook_count.sample(rng);
    let words_per_book = p.words_per_book.sample(rng);
    let economy_growth = p.economy_growth.sample(rng);
    let mut component_fraction = p.component_fraction.sample(rng);
    let mut retries = 0;
    while !(component_fraction > 0.0 && component_fraction < 1.0) {
        retries += 1;
        if retries > FRACTION_RETRIES {
            return Err(Error::InvalidPrior(format!(
                "component_fraction kept falling outside (0, 1) after {FRACTION_RETRIES} draws"
            )));
        }
        component_fraction = p.component_fraction.sample(rng);
    }
    Ok(HqDraw {
        code: code_words(repo_tb, overhead, words_per_tb),
        papers: paper_words(paper_count, words_per_paper),
        books: book_words(
            books_from_publishing(published, digitized, economy_growth),
            ebooks,
            words_per_book,
        ),
        component_fraction,
        economy_growth,
    })
}

/// Per-trial component draws. Trial `i` is identical across every function in
/// this module for the same seed.
pub fn hq_draws(p: &HqPriors, trials: usize, seed: u64) -> Result<Vec<HqDraw>> {
    p.validate()?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trial count must be at least 1".into()));
    }
    let stream = SeedStream::new(seed).fork("high_quality");
    (0..trials)
        .into_par_iter()
        .map(|i| draw(p, &mut stream.rng(i as u64)))
        .collect()
}

fn component(
    p: &HqPriors,
    trials: usize,
    seed: u64,
    pick: impl Fn(&HqDraw) -> f64,
) -> Result<SampleSet> {
    let draws = hq_draws(p, trials, seed)?;
    SampleSet::new(draws.iter().map(pick).collect(), Unit::Words, seed)
}

pub fn code_stock(p: &HqPriors, trials: usize, seed: u64) -> Result<SampleSet> {
    component(p, trials, seed, |d| d.code)
}

pub fn papers_stock(p: &HqPriors, trials: usize, seed: u64) -> Result<SampleSet> {
    component(p, trials, seed, |d| d.papers)
}

pub fn books_stock(p: &HqPriors, trials: usize, seed: u64) -> Result<SampleSet> {
    component(p, trials, seed, |d| d.books)
}

/// Sampled component stocks plus the share and growth priors.
#[derive(Debug, Clone, PartialEq)]
pub struct HqComponents {
    pub code_words: SampleSet,
    pub paper_words: SampleSet,
    pub book_words: SampleSet,
    pub component_fraction: SampleSet,
    pub economy_growth: SampleSet,
}

pub fn hq_components(p: &HqPriors, trials: usize, seed: u64) -> Result<HqComponents> {
    let d = hq_draws(p, trials, seed)?;
    let set = |f: fn(&HqDraw) -> f64, unit| SampleSet::new(d.iter().map(f).collect(), unit, seed);
    Ok(HqComponents {
        code_words: set(|d| d.code, Unit::Words)?,
        paper_words: set(|d| d.papers, Unit::Words)?,
        book_words: set(|d| d.books, Unit::Words)?,
        component_fraction: set(|d| d.component_fraction, Unit::Fraction)?,
        economy_growth: set(|d| d.economy_growth, Unit::Fraction)?,
    })
}

/// Exponential trajectory through `total_2022` growing at `growth` per year.
pub fn exponential_path(grid: YearGrid, total_2022: f64, growth: f64) -> Vec<f64> {
    let (ln_total, ln_g) = (total_2022.ln(), growth.ln_1p());
    grid.years()
        .map(|y| (ln_total + f64::from(y - ANCHOR_YEAR) * ln_g).exp())
        .collect()
}

/// High-quality stock per trial over `grid`.
pub fn hq_total_stock(p: &HqPriors, grid: YearGrid, trials: usize, seed: u64) -> Result<TrajectorySet> {
    grid.require(ANCHOR_YEAR)?;
    let draws = hq_draws(p, trials, seed)?;
    let rows = draws
        .iter()
        .map(|d| exponential_path(grid, d.total_2022(), d.economy_growth))
        .collect();
    TrajectorySet::from_rows(grid, Unit::Words, rows)
}

/// Source classes of a training corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataClass {
    /// Filtered web and encyclopedic text written by dedicated internet users.
    DedicatedContributor,
    /// Books, papers, code and news produced by professionals.
    Professional,
}

pub fn component_class(name: &str) -> Option<DataClass> {
    match name {
        "scraped-web" | "encyclopedic" => Some(DataClass::DedicatedContributor),
        "books" | "papers" | "code" | "news" => Some(DataClass::Professional),
        _ => None,
    }
}

/// Named shares of a training corpus. Shares need not sum to one; the
/// remainder is unclassified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetComposition {
    pub name: String,
    pub shares: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassShares {
    pub contributor: f64,
    pub professional: f64,
}

impl ClassShares {
    pub fn total(&self) -> f64 {
        self.contributor + self.professional
    }
}

pub fn classify_composition(c: &DatasetComposition) -> Result<ClassShares> {
    let mut out = ClassShares::default();
    let mut sum = 0.0;
    for (name, &share) in &c.shares {
        if !(share.is_finite() && share >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "{}: share of {name} must be non-negative, got {share}",
                c.name
            )));
        }
        sum += share;
        match component_class(name) {
            Some(DataClass::DedicatedContributor) => out.contributor += share,
            Some(DataClass::Professional) => out.professional += share,
            None => return Err(Error::Classification(name.clone())),
        }
    }
    if sum > 1.0 + 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "{}: shares sum to {sum} > 1",
            c.name
        )));
    }
    Ok(out)
}

/// Approximate mixtures of three published high-quality corpora, grouped
/// into the component names understood by [`classify_composition`].
pub fn default_compositions() -> Vec<DatasetComposition> {
    let mk = |name: &str, shares: &[(&str, f64)]| DatasetComposition {
        name: name.to_string(),
        shares: shares.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
    };
    vec![
        mk(
            "The Pile",
            &[
                ("scraped-web", 0.369),
                ("books", 0.151),
                ("papers", 0.309),
                ("code", 0.076),
                ("encyclopedic", 0.015),
            ],
        ),
        mk(
            "MassiveText",
            &[
                ("scraped-web", 0.58),
                ("books", 0.27),
                ("news", 0.10),
                ("code", 0.03),
                ("encyclopedic", 0.02),
            ],
        ),
        mk(
            "PaLM",
            &[
                ("scraped-web", 0.77),
                ("books", 0.13),
                ("code", 0.05),
                ("encyclopedic", 0.04),
                ("news", 0.01),
            ],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_closed_forms() {
        // Overhead 267% from 3.1TB / 844GB - 1.
        let w = code_words(43.0, 2.67, 2e11);
        assert!((w - 43.0 / 3.67 * 2e11).abs() < 1.0);
        assert!((w / 2.34e12 - 1.0).abs() < 0.01);
        // Every prior at its low end: 21 TB at 600% overhead.
        assert!((code_words(21.0, 6.0, 2e11) - 6e11).abs() < 1.0);
    }

    #[test]
    fn paper_and_book_closed_forms() {
        assert_eq!(paper_words(1.7e8, 6e3), 1.02e12);
        assert_eq!(paper_words(1.7e8, 0.0), 0.0);
        assert_eq!(book_words(0.0, 2e7, 1e5) * 2.0, 2e12);
        assert_eq!(books_from_publishing(2e6, 0.0, 0.045), 0.0);
    }

    #[test]
    fn total_arithmetic_and_growth() {
        let d = HqDraw {
            code: 1e12,
            papers: 1e12,
            books: 1e12,
            component_fraction: 0.5,
            economy_growth: 0.04,
        };
        assert_eq!(d.total_2022(), 6e12);
        let grid = YearGrid::new(2000, 2050).unwrap();
        let path = exponential_path(grid, 6e12, 0.04);
        let ratio = path[40] / path[22];
        assert!((ratio - 1.04f64.powi(18)).abs() < 1e-12, "{ratio}");
        assert!((ratio - 2.026).abs() < 1e-3);
    }

    #[test]
    fn components_share_trials_with_total() {
        let p = HqPriors::default();
        let code = code_stock(&p, 64, 5).unwrap();
        let draws = hq_draws(&p, 64, 5).unwrap();
        assert!(code.values.iter().zip(&draws).all(|(a, d)| *a == d.code));
    }

    #[test]
    fn classification_examples() {
        let one = DatasetComposition {
            name: "web".into(),
            shares: [("scraped-web".to_string(), 1.0)].into(),
        };
        assert_eq!(
            classify_composition(&one).unwrap(),
            ClassShares {
                contributor: 1.0,
                professional: 0.0
            }
        );
        let mixed = DatasetComposition {
            name: "mixed".into(),
            shares: [
                ("scraped-web", 0.5),
                ("books", 0.2),
                ("papers", 0.15),
                ("code", 0.1),
                ("news", 0.05),
            ]
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
        };
        let c = classify_composition(&mixed).unwrap();
        assert!((c.contributor - 0.5).abs() < 1e-12 && (c.professional - 0.5).abs() < 1e-12);
    }

    #[test]
    fn unknown_component_is_named() {
        let c = DatasetComposition {
            name: "x".into(),
            shares: [("podcasts".to_string(), 0.1)].into(),
        };
        match classify_composition(&c) {
            Err(Error::Classification(name)) => assert_eq!(name, "podcasts"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn default_compositions_classify() {
        for c in default_compositions() {
            let s = classify_composition(&c).unwrap();
            let sum: f64 = c.shares.values().sum();
            assert!((s.total() - sum).abs() < 1e-12);
        }
    }
}
