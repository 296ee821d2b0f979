//! Training-dataset projections and exhaustion dates.
//!
//! Two projections of the largest training dataset are supported: the
//! historical doubling-time trend, and the compute-optimal size `D ∝ sqrt(C)`
//! along a projected compute budget. Both are compared trial-by-trial with a
//! stock trajectory: trial `i` of the projection always meets trial `i` of the
//! stock.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::{quantile_sorted, Ci90, Prior, SeedStream, TrajectorySet, Unit, YearGrid, Z95};

/// Historical trend of the largest training dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrendParams {
    /// Size of the largest dataset at `start_year`, in datapoints.
    pub start_size: f64,
    pub start_year: i32,
    /// Doubling time in months.
    pub doubling_months: Prior,
}

impl TrendParams {
    /// Language: 2e12 words, doubling every 15.8 [11.2, 20.9] months.
    pub fn language() -> Self {
        Self {
            start_size: 2e12,
            start_year: 2022,
            doubling_months: Prior::Range([11.2, 20.9]),
        }
    }

    /// Vision: 3e9 images, doubling every 41.5 [30.4, 48.3] months.
    pub fn vision() -> Self {
        Self {
            start_size: 3e9,
            start_year: 2022,
            doubling_months: Prior::Range([30.4, 48.3]),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start_size > 0.0 && self.start_size.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "trend start size must be positive, got {}",
                self.start_size
            )));
        }
        self.doubling_months.validate("doubling_months")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComputeRow {
    pub year: i32,
    pub flop_q05: f64,
    pub flop_q50: f64,
    pub flop_q95: f64,
}

/// Yearly quantiles of the largest affordable training run, in FLOP.
#[derive(Debug, Clone, PartialEq)]
pub struct ComputeTrajectory {
    rows: Vec<ComputeRow>,
}

impl ComputeTrajectory {
    pub fn new(rows: Vec<ComputeRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("compute trajectory"));
        }
        let invalid = |message: String| Error::Validation {
            file: "compute".into(),
            message,
        };
        if let Some(w) = rows.windows(2).find(|w| w[0].year >= w[1].year) {
            return Err(invalid(format!(
                "years must be strictly increasing ({} then {})",
                w[0].year, w[1].year
            )));
        }
        for r in &rows {
            let ok = [r.flop_q05, r.flop_q50, r.flop_q95]
                .iter()
                .all(|v| v.is_finite() && *v > 0.0);
            if !ok {
                return Err(invalid(format!("non-positive compute in {}", r.year)));
            }
            if !(r.flop_q05 <= r.flop_q50 && r.flop_q50 <= r.flop_q95) {
                return Err(invalid(format!("quantiles out of order in {}", r.year)));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[ComputeRow] {
        &self.rows
    }

    pub fn first_year(&self) -> i32 {
        self.rows[0].year
    }

    pub fn last_year(&self) -> i32 {
        self.rows[self.rows.len() - 1].year
    }

    pub fn median_at(&self, year: i32) -> Option<f64> {
        self.rows.iter().find(|r| r.year == year).map(|r| r.flop_q50)
    }

    /// Log-compute at `year` for standard-normal score `z`, interpolating
    /// log-quantiles linearly between rows and holding the first row flat
    /// before it.
    fn log_flop(&self, year: i32, z: f64) -> f64 {
        let at = |r: &ComputeRow| {
            let mid = r.flop_q50.ln();
            let edge = if z >= 0.0 { r.flop_q95.ln() } else { r.flop_q05.ln() };
            mid + z.abs() / Z95 * (edge - mid)
        };
        let i = self.rows.partition_point(|r| r.year <= year);
        if i == 0 {
            return at(&self.rows[0]);
        }
        let a = &self.rows[i - 1];
        if a.year == year || i == self.rows.len() {
            return at(a);
        }
        let b = &self.rows[i];
        let t = f64::from(year - a.year) / f64::from(b.year - a.year);
        at(a) + t * (at(b) - at(a))
    }
}

/// Fixes the constant in `D = D_anchor * sqrt(C / C_anchor)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingAnchor {
    pub compute_flop: f64,
    pub dataset_size: f64,
}

impl ScalingAnchor {
    /// 5.76e23 FLOP trained on 1.4e12 tokens, a compute-optimal language run.
    pub fn chinchilla() -> Self {
        Self {
            compute_flop: 5.76e23,
            dataset_size: 1.4e12,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.compute_flop > 0.0 && self.dataset_size > 0.0)
            || !self.compute_flop.is_finite()
            || !self.dataset_size.is_finite()
        {
            return Err(Error::Config(format!(
                "scaling anchor must be positive: {self:?}"
            )));
        }
        Ok(())
    }
}

/// `D(t) = D0 * 2^(12 (t - t0) / tau)` with one doubling time per trial.
pub fn historical_projection(
    trend: &TrendParams,
    grid: YearGrid,
    trials: usize,
    seed: u64,
    unit: Unit,
) -> Result<TrajectorySet> {
    trend.validate()?;
    grid.require(trend.start_year)?;
    let stream = SeedStream::new(seed).fork("historical");
    let ln_d0 = trend.start_size.ln();
    TrajectorySet::from_fn(grid, unit, trials, |i| {
        let tau = trend.doubling_months.sample(&mut stream.rng(i as u64));
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidPrior(format!("doubling time sample {tau}")));
        }
        let slope = 12.0 * std::f64::consts::LN_2 / tau;
        Ok(grid
            .years()
            .map(|y| (ln_d0 + slope * f64::from(y - trend.start_year)).exp())
            .collect())
    })
}

/// Compute-optimal dataset size along one sampled compute path per trial.
///
/// Each trial draws a single standard-normal score and follows that quantile
/// of the compute table through time (kept non-decreasing), so a trial that
/// starts pessimistic stays pessimistic.
pub fn compute_optimal_projection(
    compute: &ComputeTrajectory,
    anchor: Option<&ScalingAnchor>,
    grid: YearGrid,
    trials: usize,
    seed: u64,
    unit: Unit,
) -> Result<TrajectorySet> {
    let anchor = anchor.ok_or_else(|| Error::Config("scaling anchor missing".into()))?;
    anchor.validate()?;
    if compute.last_year() < grid.end() {
        return Err(Error::Grid(format!(
            "compute table ends in {} but the grid runs to {}",
            compute.last_year(),
            grid.end()
        )));
    }
    let stream = SeedStream::new(seed).fork("compute");
    let (ln_da, ln_ca) = (anchor.dataset_size.ln(), anchor.compute_flop.ln());
    TrajectorySet::from_fn(grid, unit, trials, |i| {
        let z: f64 = stream.rng(i as u64).sample(StandardNormal);
        let mut running = f64::NEG_INFINITY;
        Ok(grid
            .years()
            .map(|y| {
                running = running.max(compute.log_flop(y, z));
                (ln_da + 0.5 * (running - ln_ca)).exp()
            })
            .collect())
    })
}

/// Caps each projection trial at its paired stock trial from the first year
/// the projection reaches it.
pub fn constrain_projection(
    projection: &TrajectorySet,
    stock: &TrajectorySet,
) -> Result<TrajectorySet> {
    check_paired(projection, stock)?;
    let rows = projection
        .rows()
        .zip(stock.rows())
        .map(|(p, s)| match p.iter().zip(s).position(|(a, b)| a >= b) {
            Some(j) => p[..j].iter().chain(&s[j..]).copied().collect(),
            None => p.to_vec(),
        })
        .collect();
    TrajectorySet::from_rows(projection.grid(), projection.unit(), rows)
}

fn check_paired(projection: &TrajectorySet, stock: &TrajectorySet) -> Result<()> {
    projection.check_compatible(stock)?;
    if projection.trials() != stock.trials() {
        return Err(Error::InvalidArgument(format!(
            "projection has {} trials, stock has {}",
            projection.trials(),
            stock.trials()
        )));
    }
    Ok(())
}

/// Exhaustion year of one paired trial, or `None` if the projection stays
/// below the stock for the whole grid.
///
/// The crossing is interpolated linearly in log space between the last year
/// below the stock and the first year at or above it.
pub fn crossing_year(grid: YearGrid, projection: &[f64], stock: &[f64]) -> Option<f64> {
    let gap = |j: usize| projection[j].ln() - stock[j].ln();
    let j = projection.iter().zip(stock).position(|(p, s)| p >= s)?;
    let year = f64::from(grid.year_at(j));
    if j == 0 {
        return Some(year);
    }
    let (before, after) = (gap(j - 1), gap(j));
    if !after.is_finite() || !before.is_finite() || after == before {
        return Some(year);
    }
    Some(year - 1.0 + (-before) / (after - before))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustionResult {
    /// Per-trial exhaustion year; `None` marks a censored trial.
    pub years: Vec<Option<f64>>,
    /// `[q05, q50, q95]` over uncensored trials, if any.
    pub quantiles: Option<[f64; 3]>,
    pub censored_count: usize,
    pub grid: YearGrid,
}

impl ExhaustionResult {
    pub fn trials(&self) -> usize {
        self.years.len()
    }

    pub fn median(&self) -> Option<f64> {
        self.quantiles.map(|q| q[1])
    }

    /// Share of all trials (censored included) exhausting strictly before `year`.
    pub fn probability_before(&self, year: f64) -> f64 {
        let hits = self.years.iter().flatten().filter(|&&y| y < year).count();
        hits as f64 / self.years.len() as f64
    }
}

pub fn exhaustion_distribution(
    projection: &TrajectorySet,
    stock: &TrajectorySet,
) -> Result<ExhaustionResult> {
    check_paired(projection, stock)?;
    let grid = projection.grid();
    let years: Vec<Option<f64>> = (0..projection.trials())
        .into_par_iter()
        .map(|i| crossing_year(grid, projection.row(i), stock.row(i)))
        .collect();
    let mut hits: Vec<f64> = years.iter().flatten().copied().collect();
    hits.sort_by(f64::total_cmp);
    let censored_count = years.len() - hits.len();
    let quantiles = (!hits.is_empty()).then(|| {
        [
            quantile_sorted(&hits, 0.05),
            quantile_sorted(&hits, 0.5),
            quantile_sorted(&hits, 0.95),
        ]
    });
    Ok(ExhaustionResult {
        years,
        quantiles,
        censored_count,
        grid,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustionHistogram {
    /// `(calendar year, probability of exhausting during it)`.
    pub bins: Vec<(i32, f64)>,
    /// Probability that the stock is never reached on the grid.
    pub censored: f64,
}

impl ExhaustionHistogram {
    pub fn total(&self) -> f64 {
        self.bins.iter().map(|b| b.1).sum::<f64>() + self.censored
    }

    pub fn mass_before(&self, year: i32) -> f64 {
        self.bins.iter().filter(|b| b.0 < year).map(|b| b.1).sum()
    }
}

/// Normalized per-year histogram of exhaustion dates plus a censored bucket.
pub fn exhaustion_probability_by_year(
    r: &ExhaustionResult,
    grid: YearGrid,
) -> Result<ExhaustionHistogram> {
    if r.years.is_empty() {
        return Err(Error::EmptyInput("exhaustion result"));
    }
    let n = r.years.len() as f64;
    let mut counts = vec![0usize; grid.len()];
    let mut censored = 0usize;
    for y in &r.years {
        match y {
            Some(y) => {
                let bin = (y.floor() as i32).clamp(grid.start(), grid.end());
                counts[(bin - grid.start()) as usize] += 1;
            }
            None => censored += 1,
        }
    }
    Ok(ExhaustionHistogram {
        bins: grid
            .years()
            .zip(counts)
            .map(|(y, c)| (y, c as f64 / n))
            .collect(),
        censored: censored as f64 / n,
    })
}

/// Doubling-time samples behind a historical projection, for reporting.
pub fn doubling_time_ci(trend: &TrendParams) -> Result<Ci90> {
    trend.doubling_months.ci()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> YearGrid {
        YearGrid::new(2022, 2040).unwrap()
    }

    #[test]
    fn twelve_month_doubling() {
        let trend = TrendParams {
            start_size: 1e12,
            start_year: 2022,
            doubling_months: Prior::Point(12.0),
        };
        let t = historical_projection(&trend, grid(), 2, 0, Unit::Words).unwrap();
        assert!((t.value(0, 2023).unwrap() / 2e12 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn language_median_trend_closed_form() {
        let trend = TrendParams {
            doubling_months: Prior::Point(15.8),
            ..TrendParams::language()
        };
        let t = historical_projection(&trend, grid(), 1, 0, Unit::Words).unwrap();
        let want = 2e12 * 2f64.powf(12.0 / 15.8);
        assert!((t.value(0, 2023).unwrap() / want - 1.0).abs() < 1e-12);
        assert!((want / 3.39e12 - 1.0).abs() < 2e-3);
    }

    fn flat_compute(years: std::ops::RangeInclusive<i32>, flop: impl Fn(i32) -> f64) -> ComputeTrajectory {
        ComputeTrajectory::new(
            years
                .map(|y| ComputeRow {
                    year: y,
                    flop_q05: flop(y),
                    flop_q50: flop(y),
                    flop_q95: flop(y),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn compute_identity_and_square_root() {
        let anchor = ScalingAnchor {
            compute_flop: 1e24,
            dataset_size: 1e12,
        };
        let c = flat_compute(2022..=2040, |_| 1e24);
        let t = compute_optimal_projection(&c, Some(&anchor), grid(), 3, 0, Unit::Words).unwrap();
        assert!(t.rows().all(|r| r.iter().all(|&v| (v / 1e12 - 1.0).abs() < 1e-12)));

        let c = flat_compute(2022..=2040, |y| if y < 2030 { 1e24 } else { 1e26 });
        let t = compute_optimal_projection(&c, Some(&anchor), grid(), 1, 0, Unit::Words).unwrap();
        let ratio = t.value(0, 2030).unwrap() / t.value(0, 2029).unwrap();
        assert!((ratio - 10.0).abs() < 1e-9);
    }

    #[test]
    fn yearly_compute_doubling_gives_two_year_dataset_doubling() {
        let anchor = ScalingAnchor {
            compute_flop: 1e24,
            dataset_size: 1e12,
        };
        let c = flat_compute(2022..=2040, |y| 1e24 * 2f64.powi(y - 2022));
        let t = compute_optimal_projection(&c, Some(&anchor), grid(), 1, 0, Unit::Words).unwrap();
        let ratio = t.value(0, 2026).unwrap() / t.value(0, 2024).unwrap();
        assert!((ratio - 2.0).abs() < 1e-9);
    }

    #[test]
    fn missing_anchor_is_a_config_error() {
        let c = flat_compute(2022..=2040, |_| 1e24);
        assert!(matches!(
            compute_optimal_projection(&c, None, grid(), 1, 0, Unit::Words),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn compute_table_validation() {
        let bad = ComputeRow {
            year: 2022,
            flop_q05: 2.0,
            flop_q50: 1.0,
            flop_q95: 3.0,
        };
        assert!(ComputeTrajectory::new(vec![bad]).is_err());
    }

    fn single(values: Vec<f64>) -> TrajectorySet {
        TrajectorySet::from_rows(YearGrid::new(2022, 2022 + values.len() as i32 - 1).unwrap(), Unit::Words, vec![values]).unwrap()
    }

    #[test]
    fn constraint_examples() {
        let p = single((0..10).map(|k| 1e12 * 2f64.powi(k)).collect());
        let s = single(vec![1e13; 10]);
        let c = constrain_projection(&p, &s).unwrap();
        for (j, v) in c.row(0).iter().enumerate() {
            let year = 2022 + j as i32;
            if year >= 2026 {
                assert_eq!(*v, 1e13);
            } else {
                assert_eq!(*v, p.row(0)[j]);
            }
        }
        let below = single(vec![1.0; 10]);
        assert_eq!(constrain_projection(&below, &s).unwrap(), below);
    }

    #[test]
    fn toy_exhaustion_is_exact() {
        let p = single((0..10).map(|k| 1e12 * 2f64.powi(k)).collect());
        let s = single(vec![8e12; 10]);
        let r = exhaustion_distribution(&p, &s).unwrap();
        assert_eq!(r.years[0], Some(2025.0));
        assert_eq!(r.censored_count, 0);
    }

    #[test]
    fn exhaustion_at_start_and_censoring() {
        let s = single(vec![1e12; 5]);
        let r = exhaustion_distribution(&single(vec![2e12; 5]), &s).unwrap();
        assert_eq!(r.years[0], Some(2022.0));
        let r = exhaustion_distribution(&single(vec![1.0; 5]), &s).unwrap();
        assert_eq!(r.years[0], None);
        assert_eq!(r.censored_count, 1);
        assert!(r.quantiles.is_none());
    }

    #[test]
    fn histogram_normalization() {
        let r = ExhaustionResult {
            years: vec![Some(2030.2); 4],
            quantiles: None,
            censored_count: 0,
            grid: grid(),
        };
        let h = exhaustion_probability_by_year(&r, grid()).unwrap();
        assert_eq!(h.bins.iter().filter(|b| b.1 > 0.0).count(), 1);
        assert_eq!(h.bins[8], (2030, 1.0));
        let empty = ExhaustionResult {
            years: vec![],
            ..r
        };
        assert!(exhaustion_probability_by_year(&empty, grid()).is_err());
    }
}
