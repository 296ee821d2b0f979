//! Catalog of data-stock models.
//!
//! Each model turns a handful of sampled priors into an annual production
//! rate. The stock at a given year is the trapezoidal integral of production
//! since the model's start year, except for the indexed-web model, which is a
//! static snapshot. Internet-driven models scale their 2022 rate by
//! `users(t) / users(2022)` and produce nothing before 1990.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::demographics::{AnnualCurves, InternetUsersModel};
use crate::error::{Error, Result};
use crate::mc::{
    cumulative_weights, pick_component, Prior, SampleSet, SeedStream, TrajectorySet, Unit,
    YearGrid,
};

/// Year every production rate is normalized to and stocks are reported at.
pub const ANCHOR_YEAR: i32 = 2022;
/// First year of production for internet-driven models.
pub const INTERNET_START: i32 = 1990;

const DAYS_PER_YEAR: f64 = 365.0;
const MINUTES_PER_YEAR: f64 = 60.0 * 24.0 * 365.0;
const SECONDS_PER_HOUR: f64 = 3600.0;
const GB_PER_TB: f64 = 1000.0;
const MONTHS_PER_YEAR: f64 = 12.0;

/// Population and internet-user curves on the model grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Demography {
    curves: AnnualCurves,
    users_anchor: f64,
}

impl Demography {
    pub fn new(model: &InternetUsersModel, grid: YearGrid) -> Result<Self> {
        let curves = model.annual_curves(grid);
        let j = grid.require(ANCHOR_YEAR)?;
        let users_anchor = curves.internet_users[j];
        Ok(Self {
            curves,
            users_anchor,
        })
    }

    pub fn grid(&self) -> YearGrid {
        self.curves.grid
    }

    pub fn curves(&self) -> &AnnualCurves {
        &self.curves
    }

    fn index(&self, year: i32) -> Result<usize> {
        self.curves.grid.require(year)
    }

    pub fn population(&self, year: i32) -> Result<f64> {
        Ok(self.curves.population[self.index(year)?])
    }

    /// Internet users, zero before [`INTERNET_START`].
    pub fn internet_users(&self, year: i32) -> Result<f64> {
        let j = self.index(year)?;
        Ok(if year < INTERNET_START {
            0.0
        } else {
            self.curves.internet_users[j]
        })
    }

    /// `users(year) / users(2022)`.
    pub fn user_scale(&self, year: i32) -> Result<f64> {
        Ok(self.internet_users(year)? / self.users_anchor)
    }
}

macro_rules! priors {
    ($(#[$m:meta])* $name:ident { $($field:ident : $default:expr),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
        #[serde(deny_unknown_fields, default)]
        pub struct $name {
            $(pub $field: Prior),+
        }

        impl Default for $name {
            fn default() -> Self {
                Self { $($field: $default),+ }
            }
        }

        impl $name {
            pub const FIELDS: &'static [&'static str] = &[$(stringify!($field)),+];

            pub fn priors(&self) -> Vec<(&'static str, Prior)> {
                vec![$((stringify!($field), self.$field)),+]
            }

            fn sample<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<f64>) {
                $(out.push(self.$field.sample(rng));)+
            }
        }
    };
}

use Prior::{Point, Range};

priors!(
    /// Words spoken or written per person, a fraction of them digitally recorded.
    RecordedSpeech {
        words_per_person_day: Range([5e3, 2e4]),
        digitized_fraction: Range([0.005, 0.5]),
    }
);

priors!(
    /// Constant text output per internet user.
    InternetUsersText {
        words_per_user_year: Range([1e4, 1e5]),
    }
);

priors!(
    /// YouTube speech, tweets and blog posts, scaled up to the whole internet.
    PopularPlatformsLang {
        youtube_hours_per_min: Point(500.0),
        speech_fraction: Range([0.05, 0.5]),
        words_per_hour: Point(9e3),
        tweets_per_day: Point(5e8),
        words_per_tweet: Range([10.0, 50.0]),
        blog_posts_per_day: Point(7.5e6),
        words_per_post: Range([100.0, 1000.0]),
        share_of_internet: Range([0.05, 0.40]),
    }
);

priors!(
    /// New plaintext in monthly CommonCrawl snapshots.
    CommonCrawl {
        tb_compressed_per_month: Range([5.0, 10.0]),
        new_fraction: Point(0.5),
        compression_rate: Range([0.30, 0.85]),
        words_per_gb: Point(2e8),
    }
);

priors!(
    /// Static snapshot of the indexed web.
    IndexedWeb {
        websites: Range([1e10, 1e11]),
        words_per_site: Range([500.0, 5e4]),
    }
);

priors!(
    /// One image per usable second of uploaded video.
    YouTubeImages {
        youtube_hours_per_min: Point(500.0),
        usable_fraction: Range([0.10, 0.50]),
        images_per_video_second: Point(1.0),
    }
);

priors!(
    /// Images shared on social platforms, de-duplicated by reshare count.
    SocialImages {
        shared_per_day: Range([5e9, 2e10]),
        reshare_factor: Range([5.0, 15.0]),
    }
);

priors!(
    /// Third-party estimate of images produced in 2022.
    ExternalVision {
        images_2022: Range([5e10, 2e11]),
    }
);

/// Language stock model priors, keyed as in config files.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LanguagePriors {
    pub recorded_speech: RecordedSpeech,
    pub internet_users: InternetUsersText,
    pub popular_platforms: PopularPlatformsLang,
    pub common_crawl: CommonCrawl,
    pub indexed_web: IndexedWeb,
}

/// Vision stock model priors, keyed as in config files.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VisionPriors {
    pub youtube_images: YouTubeImages,
    pub social_images: SocialImages,
    pub external: ExternalVision,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StockModelSpec {
    RecordedSpeech(RecordedSpeech),
    InternetUsers(InternetUsersText),
    PopularPlatformsLang(PopularPlatformsLang),
    CommonCrawl(CommonCrawl),
    IndexedWeb(IndexedWeb),
    YouTubeImages(YouTubeImages),
    SocialImages(SocialImages),
    /// YouTube frames plus social-media images.
    PopularPlatformsVision(YouTubeImages, SocialImages),
    ExternalVision(ExternalVision),
}

impl StockModelSpec {
    pub const NAMES: [&'static str; 9] = [
        "recorded_speech",
        "internet_users",
        "popular_platforms",
        "common_crawl",
        "indexed_web",
        "youtube_images",
        "social_images",
        "popular_platforms_vision",
        "external_vision",
    ];

    /// Looks a model up by its config name.
    pub fn by_name(name: &str, language: &LanguagePriors, vision: &VisionPriors) -> Result<Self> {
        Ok(match name {
            "recorded_speech" => Self::RecordedSpeech(language.recorded_speech),
            "internet_users" => Self::InternetUsers(language.internet_users),
            "popular_platforms" => Self::PopularPlatformsLang(language.popular_platforms),
            "common_crawl" => Self::CommonCrawl(language.common_crawl),
            "indexed_web" => Self::IndexedWeb(language.indexed_web),
            "youtube_images" => Self::YouTubeImages(vision.youtube_images),
            "social_images" => Self::SocialImages(vision.social_images),
            "popular_platforms_vision" => {
                Self::PopularPlatformsVision(vision.youtube_images, vision.social_images)
            }
            "external_vision" => Self::ExternalVision(vision.external),
            other => return Err(Error::UnsupportedModel(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::RecordedSpeech(_) => "recorded_speech",
            Self::InternetUsers(_) => "internet_users",
            Self::PopularPlatformsLang(_) => "popular_platforms",
            Self::CommonCrawl(_) => "common_crawl",
            Self::IndexedWeb(_) => "indexed_web",
            Self::YouTubeImages(_) => "youtube_images",
            Self::SocialImages(_) => "social_images",
            Self::PopularPlatformsVision(..) => "popular_platforms_vision",
            Self::ExternalVision(_) => "external_vision",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::RecordedSpeech(_) => "Recorded speech",
            Self::InternetUsers(_) => "Internet users",
            Self::PopularPlatformsLang(_) => "Popular platforms",
            Self::CommonCrawl(_) => "CommonCrawl",
            Self::IndexedWeb(_) => "Indexed websites",
            Self::YouTubeImages(_) => "YouTube frames",
            Self::SocialImages(_) => "Social media images",
            Self::PopularPlatformsVision(..) => "Popular platforms",
            Self::ExternalVision(_) => "External estimate",
        }
    }

    /// Stock unit.
    pub fn unit(&self) -> Unit {
        match self {
            Self::RecordedSpeech(_)
            | Self::InternetUsers(_)
            | Self::PopularPlatformsLang(_)
            | Self::CommonCrawl(_)
            | Self::IndexedWeb(_) => Unit::Words,
            Self::YouTubeImages(_)
            | Self::SocialImages(_)
            | Self::PopularPlatformsVision(..)
            | Self::ExternalVision(_) => Unit::Images,
        }
    }

    pub fn is_static(&self) -> bool {
        matches!(self, Self::IndexedWeb(_))
    }

    /// Named priors in sampling order.
    pub fn priors(&self) -> Vec<(&'static str, Prior)> {
        match self {
            Self::RecordedSpeech(p) => p.priors(),
            Self::InternetUsers(p) => p.priors(),
            Self::PopularPlatformsLang(p) => p.priors(),
            Self::CommonCrawl(p) => p.priors(),
            Self::IndexedWeb(p) => p.priors(),
            Self::YouTubeImages(p) => p.priors(),
            Self::SocialImages(p) => p.priors(),
            Self::PopularPlatformsVision(y, s) => {
                let mut v = y.priors();
                v.extend(s.priors());
                v
            }
            Self::ExternalVision(p) => p.priors(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, prior) in self.priors() {
            prior.validate(&format!("{}.{name}", self.name()))?;
        }
        Ok(())
    }

    /// Draws one parameter vector, ordered as [`Self::priors`].
    pub fn sample_params<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut out = Vec::with_capacity(8);
        match self {
            Self::RecordedSpeech(p) => p.sample(rng, &mut out),
            Self::InternetUsers(p) => p.sample(rng, &mut out),
            Self::PopularPlatformsLang(p) => p.sample(rng, &mut out),
            Self::CommonCrawl(p) => p.sample(rng, &mut out),
            Self::IndexedWeb(p) => p.sample(rng, &mut out),
            Self::YouTubeImages(p) => p.sample(rng, &mut out),
            Self::SocialImages(p) => p.sample(rng, &mut out),
            Self::PopularPlatformsVision(y, s) => {
                y.sample(rng, &mut out);
                s.sample(rng, &mut out);
            }
            Self::ExternalVision(p) => p.sample(rng, &mut out),
        }
        out
    }

    /// Production in 2022 units per year, before demographic scaling. For
    /// recorded speech this is the per-person-year rate.
    pub fn base_rate(&self, params: &[f64]) -> Result<f64> {
        let need = self.priors().len();
        if params.len() != need {
            return Err(Error::InvalidArgument(format!(
                "{} expects {need} parameters, got {}",
                self.name(),
                params.len()
            )));
        }
        Ok(match self {
            Self::RecordedSpeech(_) => params[0] * DAYS_PER_YEAR * params[1],
            Self::InternetUsers(_) => params[0],
            Self::PopularPlatformsLang(_) => {
                let youtube = params[0] * MINUTES_PER_YEAR * params[1] * params[2];
                let tweets = params[3] * DAYS_PER_YEAR * params[4];
                let blogs = params[5] * DAYS_PER_YEAR * params[6];
                (youtube + tweets + blogs) / params[7]
            }
            Self::CommonCrawl(_) => {
                params[0] * MONTHS_PER_YEAR * params[1] / params[2] * GB_PER_TB * params[3]
            }
            Self::IndexedWeb(_) => 0.0,
            Self::YouTubeImages(_) => youtube_frames(&params[..3]),
            Self::SocialImages(_) => social_images(&params[..2]),
            Self::PopularPlatformsVision(..) => {
                youtube_frames(&params[..3]) + social_images(&params[3..5])
            }
            Self::ExternalVision(_) => params[0],
        })
    }

    /// First year with non-zero production on `grid`.
    pub fn integration_start(&self, grid: YearGrid) -> i32 {
        match self {
            Self::RecordedSpeech(_) => grid.start(),
            _ => INTERNET_START.max(grid.start()),
        }
    }

    /// Demographic multiplier applied to [`Self::base_rate`] in `year`.
    fn scale(&self, year: i32, demo: &Demography) -> Result<f64> {
        match self {
            Self::RecordedSpeech(_) => demo.population(year),
            Self::InternetUsers(_) => demo.internet_users(year),
            Self::IndexedWeb(_) => Ok(0.0),
            _ => demo.user_scale(year),
        }
    }

    /// Static stock for snapshot models.
    fn static_stock(&self, params: &[f64]) -> f64 {
        match self {
            Self::IndexedWeb(_) => params[0] * params[1],
            _ => 0.0,
        }
    }
}

fn youtube_frames(p: &[f64]) -> f64 {
    p[0] * MINUTES_PER_YEAR * SECONDS_PER_HOUR * p[1] * p[2]
}

fn social_images(p: &[f64]) -> f64 {
    p[0] * DAYS_PER_YEAR / p[1]
}

/// The five language models in reporting order.
pub fn language_models(p: &LanguagePriors) -> Vec<StockModelSpec> {
    vec![
        StockModelSpec::RecordedSpeech(p.recorded_speech),
        StockModelSpec::InternetUsers(p.internet_users),
        StockModelSpec::PopularPlatformsLang(p.popular_platforms),
        StockModelSpec::CommonCrawl(p.common_crawl),
        StockModelSpec::IndexedWeb(p.indexed_web),
    ]
}

/// The two vision models that enter the aggregate.
pub fn vision_models(p: &VisionPriors) -> Vec<StockModelSpec> {
    vec![
        StockModelSpec::PopularPlatformsVision(p.youtube_images, p.social_images),
        StockModelSpec::ExternalVision(p.external),
    ]
}

/// Production in `year` for one sampled parameter vector.
pub fn annual_production(
    spec: &StockModelSpec,
    year: i32,
    params: &[f64],
    demo: &Demography,
) -> Result<f64> {
    let rate = spec.base_rate(params)?;
    if spec.is_static() {
        return Ok(0.0);
    }
    if year < spec.integration_start(demo.grid()) {
        demo.grid().require(year)?;
        return Ok(0.0);
    }
    Ok(rate * spec.scale(year, demo)?)
}

struct Simulated {
    stock: TrajectorySet,
    production: TrajectorySet,
}

fn simulate(
    spec: &StockModelSpec,
    grid: YearGrid,
    trials: usize,
    seed: u64,
    demo: &Demography,
) -> Result<Simulated> {
    spec.validate()?;
    grid.require(ANCHOR_YEAR)?;
    if demo.grid().require(grid.start()).is_err() || demo.grid().require(grid.end()).is_err() {
        return Err(Error::Grid(format!(
            "demography grid {}..={} does not cover {}..={}",
            demo.grid().start(),
            demo.grid().end(),
            grid.start(),
            grid.end()
        )));
    }
    let stream = SeedStream::new(seed).fork(spec.name());
    let rows: Vec<(Vec<f64>, Vec<f64>)> = {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let params = spec.sample_params(&mut stream.rng(i as u64));
                let production: Vec<f64> = grid
                    .years()
                    .map(|y| annual_production(spec, y, &params, demo))
                    .collect::<Result<_>>()?;
                let stock = if spec.is_static() {
                    vec![spec.static_stock(&params); grid.len()]
                } else {
                    let mut acc = 0.0;
                    let mut out = Vec::with_capacity(grid.len());
                    out.push(0.0);
                    for w in production.windows(2) {
                        acc += 0.5 * (w[0] + w[1]);
                        out.push(acc);
                    }
                    out
                };
                Ok((stock, production))
            })
            .collect::<Result<_>>()?
    };
    if rows.is_empty() {
        return Err(Error::InvalidArgument("trial count must be at least 1".into()));
    }
    let (stock, production): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    Ok(Simulated {
        stock: TrajectorySet::from_rows(grid, spec.unit(), stock)?,
        production: TrajectorySet::from_rows(grid, spec.unit().per_year(), production)?,
    })
}

/// Cumulative stock per trial over `grid`. Parameters are sampled once per
/// trial from the stream `(seed, model name, trial index)`.
pub fn stock_trajectory(
    spec: &StockModelSpec,
    grid: YearGrid,
    trials: usize,
    seed: u64,
    demo: &Demography,
) -> Result<TrajectorySet> {
    Ok(simulate(spec, grid, trials, seed, demo)?.stock)
}

/// Stock and production at one year, from the same trials.
#[derive(Debug, Clone, PartialEq)]
pub struct StockEstimate {
    pub year: i32,
    pub samples: SampleSet,
    pub production_samples: SampleSet,
}

pub fn stock_estimate(
    spec: &StockModelSpec,
    grid: YearGrid,
    year: i32,
    trials: usize,
    seed: u64,
    demo: &Demography,
) -> Result<StockEstimate> {
    let sim = simulate(spec, grid, trials, seed, demo)?;
    Ok(StockEstimate {
        year,
        samples: SampleSet::new(sim.stock.column(year)?, spec.unit(), seed)?,
        production_samples: SampleSet::new(sim.production.column(year)?, spec.unit().per_year(), seed)?,
    })
}

/// Per-trial mixture of stock models.
///
/// Each trial copies the whole trajectory of one component, chosen with
/// probability proportional to its weight, so per-trial monotonicity survives.
pub fn aggregate_stock(
    trajectories: &[TrajectorySet],
    weights: &[f64],
    seed: u64,
) -> Result<TrajectorySet> {
    let first = trajectories
        .first()
        .ok_or(Error::EmptyInput("aggregation inputs"))?;
    if trajectories.len() != weights.len() {
        return Err(Error::Aggregation(format!(
            "{} trajectories but {} weights",
            trajectories.len(),
            weights.len()
        )));
    }
    for t in &trajectories[1..] {
        first
            .check_compatible(t)
            .map_err(|e| Error::Aggregation(e.to_string()))?;
        if t.trials() != first.trials() {
            return Err(Error::Aggregation(format!(
                "trial counts differ: {} vs {}",
                first.trials(),
                t.trials()
            )));
        }
    }
    let cum = cumulative_weights(weights)?;
    let stream = SeedStream::new(seed).fork("aggregate");
    let rows = (0..first.trials())
        .map(|i| {
            let c = pick_component(&cum, stream.rng(i as u64).random::<f64>());
            trajectories[c].row(i).to_vec()
        })
        .collect();
    TrajectorySet::from_rows(first.grid(), first.unit(), rows)
}

/// One-year forward growth `(S(year+1) - S(year)) / S(year)` per trial.
pub fn growth_rate(t: &TrajectorySet, year: i32) -> Result<SampleSet> {
    let grid = t.grid();
    let j = grid.require(year)?;
    grid.require(year + 1)?;
    let values = t
        .rows()
        .enumerate()
        .map(|(i, r)| {
            if r[j] == 0.0 {
                Err(Error::UndefinedGrowth { trial: i, year })
            } else {
                Ok((r[j + 1] - r[j]) / r[j])
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    SampleSet::new(values, Unit::Fraction, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demographics::{PenetrationParams, PopulationTable};

    fn flat_demography(pop: f64, grid: YearGrid) -> Demography {
        let table = PopulationTable::new(grid.years().map(|y| (y, pop)).collect()).unwrap();
        // Ceiling-1 sigmoid saturated long before the grid: users == population.
        let model = InternetUsersModel::new(table, PenetrationParams::new(1.0, 1000.0, 5.0).unwrap());
        Demography::new(&model, grid).unwrap()
    }

    #[test]
    fn indexed_web_produces_nothing() {
        let grid = YearGrid::new(2000, 2030).unwrap();
        let demo = flat_demography(1e9, grid);
        let spec = StockModelSpec::IndexedWeb(IndexedWeb::default());
        for y in [2000, 2022, 2030] {
            assert_eq!(annual_production(&spec, y, &[3e10, 5e3], &demo).unwrap(), 0.0);
        }
        let t = stock_trajectory(&spec, grid, 5, 1, &demo).unwrap();
        for r in t.rows() {
            assert!(r.iter().all(|&v| v == r[0] && v > 0.0));
        }
    }

    #[test]
    fn constant_production_integrates_to_rate_times_years() {
        let grid = YearGrid::new(1990, 2030).unwrap();
        let demo = flat_demography(2e9, grid);
        let prior = InternetUsersText {
            words_per_user_year: Point(1e4),
        };
        let spec = StockModelSpec::InternetUsers(prior);
        let t = stock_trajectory(&spec, grid, 3, 0, &demo).unwrap();
        // p = 2e13 words/year from 1990, so 32 years to 2022.
        assert_eq!(t.value(0, 2022).unwrap(), 2e13 * 32.0);
        let g = growth_rate(&t, 2022).unwrap();
        assert!(g.values.iter().all(|&v| (v - 1.0 / 32.0).abs() < 1e-15));
    }

    #[test]
    fn popular_platforms_youtube_term_matches_quoted_range() {
        // YouTube words/year at the speech-fraction bounds, within 20% of 130B..1.3T.
        let at = |speech: f64| 500.0 * MINUTES_PER_YEAR * speech * 9e3;
        let (lo, hi) = (at(0.05), at(0.5));
        assert!((lo / 1.3e11 - 1.0).abs() <= 0.2, "{lo:e}");
        assert!((hi / 1.3e12 - 1.0).abs() <= 0.2, "{hi:e}");
        // Base rate with everything but YouTube zeroed out reproduces the term.
        let spec = StockModelSpec::PopularPlatformsLang(PopularPlatformsLang::default());
        let rate = spec
            .base_rate(&[500.0, 0.05, 9e3, 0.0, 10.0, 0.0, 100.0, 1.0])
            .unwrap();
        assert_eq!(rate, lo);
    }

    #[test]
    fn recorded_speech_rate_follows_formula() {
        let spec = StockModelSpec::RecordedSpeech(RecordedSpeech::default());
        assert_eq!(spec.base_rate(&[1e4, 0.05]).unwrap(), 1e4 * 365.0 * 0.05);
        // Prior corners: 5e3*365*0.005 = 9.1e3 and 2e4*365*0.5 = 3.65e6.
        let lo = spec.base_rate(&[5e3, 0.005]).unwrap();
        let hi = spec.base_rate(&[2e4, 0.5]).unwrap();
        assert!((lo - 9125.0).abs() < 1e-9 && (hi - 3.65e6).abs() < 1e-6);
    }

    #[test]
    fn grid_without_anchor_year_is_rejected() {
        let grid = YearGrid::new(1990, 2010).unwrap();
        let demo = flat_demography(1e9, YearGrid::new(1950, 2100).unwrap());
        let spec = StockModelSpec::IndexedWeb(IndexedWeb::default());
        assert!(matches!(
            stock_trajectory(&spec, grid, 2, 0, &demo),
            Err(Error::Grid(_))
        ));
    }

    #[test]
    fn unknown_model_name() {
        let err = StockModelSpec::by_name("telepathy", &Default::default(), &Default::default());
        assert!(matches!(err, Err(Error::UnsupportedModel(_))));
        for name in StockModelSpec::NAMES {
            let spec = StockModelSpec::by_name(name, &Default::default(), &Default::default()).unwrap();
            assert_eq!(spec.name(), name);
        }
    }

    #[test]
    fn aggregate_identity_and_unit_checks() {
        let grid = YearGrid::new(2020, 2025).unwrap();
        let words = TrajectorySet::from_rows(grid, Unit::Words, vec![vec![1.0; 6], vec![2.0; 6]]).unwrap();
        let same = aggregate_stock(std::slice::from_ref(&words), &[1.0], 3).unwrap();
        assert_eq!(same, words);
        let images = TrajectorySet::from_rows(grid, Unit::Images, vec![vec![1.0; 6], vec![2.0; 6]]).unwrap();
        assert!(matches!(
            aggregate_stock(&[words, images], &[1.0, 1.0], 3),
            Err(Error::Aggregation(_))
        ));
    }

    #[test]
    fn zero_stock_growth_is_undefined() {
        let grid = YearGrid::new(2020, 2025).unwrap();
        let t = TrajectorySet::from_rows(grid, Unit::Words, vec![vec![0.0; 6]]).unwrap();
        assert!(matches!(growth_rate(&t, 2022), Err(Error::UndefinedGrowth { .. })));
        assert!(growth_rate(&t, 2025).is_err());
    }
}
