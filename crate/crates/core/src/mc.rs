//! Seedable Monte Carlo primitives.
//!
//! Every uncertain quantity in the models is specified as a 90% confidence
//! interval and sampled from the lognormal whose 5th and 95th percentiles match
//! the interval. Randomness is drawn from per-index seed streams, so sample `i`
//! (or trial `i`) depends only on `(seed, i)` and never on evaluation order or
//! thread count.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard-normal quantile at 0.95.
pub const Z95: f64 = 1.644_853_626_951_472_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    Words,
    WordsPerYear,
    Images,
    ImagesPerYear,
    Flop,
    Persons,
    Fraction,
    Dimensionless,
}

impl Unit {
    /// The per-year rate unit matching a stock unit.
    pub fn per_year(self) -> Unit {
        match self {
            Unit::Words => Unit::WordsPerYear,
            Unit::Images => Unit::ImagesPerYear,
            other => other,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::Words => "words",
            Unit::WordsPerYear => "words/year",
            Unit::Images => "images",
            Unit::ImagesPerYear => "images/year",
            Unit::Flop => "FLOP",
            Unit::Persons => "persons",
            Unit::Fraction => "fraction",
            Unit::Dimensionless => "1",
        };
        f.write_str(s)
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A deterministic family of random streams keyed by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedStream {
    key: u64,
}

impl SeedStream {
    pub fn new(master_seed: u64) -> Self {
        Self {
            key: mix64(master_seed),
        }
    }

    /// An independent sub-stream identified by `label`.
    pub fn fork(&self, label: &str) -> Self {
        // FNV-1a keeps labels stable across platforms and compiler versions.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Self {
            key: mix64(self.key ^ mix64(h)),
        }
    }

    pub fn seed_for(&self, index: u64) -> u64 {
        mix64(self.key ^ mix64(index.wrapping_add(0x632b_e59b_d9b4_e019)))
    }

    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed_for(index))
    }
}

/// A positive 90% confidence interval `[low, high]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ci90 {
    low: f64,
    high: f64,
    unit: Unit,
}

impl Ci90 {
    pub fn new(low: f64, high: f64) -> Result<Self> {
        if !(low.is_finite() && high.is_finite()) || low <= 0.0 || high <= 0.0 {
            return Err(Error::InvalidPrior(format!(
                "bounds must be finite and positive, got [{low}, {high}]"
            )));
        }
        if low > high {
            return Err(Error::InvalidPrior(format!(
                "low exceeds high: [{low}, {high}]"
            )));
        }
        Ok(Self {
            low,
            high,
            unit: Unit::Dimensionless,
        })
    }

    pub fn point(value: f64) -> Result<Self> {
        Self::new(value, value)
    }

    pub fn with_unit(mut self, unit: Unit) -> Self {
        self.unit = unit;
        self
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn is_degenerate(&self) -> bool {
        self.low == self.high
    }

    /// Median of the matched lognormal, `sqrt(low * high)`.
    pub fn median(&self) -> f64 {
        if self.is_degenerate() {
            self.low
        } else {
            (self.low * self.high).sqrt()
        }
    }

    pub fn log_mean(&self) -> f64 {
        0.5 * (self.low.ln() + self.high.ln())
    }

    pub fn log_sigma(&self) -> f64 {
        (self.high.ln() - self.low.ln()) / (2.0 * Z95)
    }

    /// Maps a standard-normal draw onto the interval's lognormal.
    pub fn from_standard_normal(&self, z: f64) -> f64 {
        if self.is_degenerate() {
            self.low
        } else {
            (self.log_mean() + self.log_sigma() * z).exp()
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        self.from_standard_normal(z)
    }

    /// The same interval multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Ok(Self::new(self.low * factor, self.high * factor)?.with_unit(self.unit))
    }
}

impl fmt::Display for Ci90 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}] {}", self.low, self.high, self.unit)
    }
}

/// A model parameter: either a fixed number or a 90% interval.
///
/// In config files a point is written as a bare number and an interval as a
/// two-element array, e.g. `words_per_hour = 9000` or `speech_fraction = [0.05, 0.5]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Prior {
    Point(f64),
    Range([f64; 2]),
}

impl Prior {
    pub fn ci(&self) -> Result<Ci90> {
        match *self {
            Prior::Point(v) => Ci90::point(v),
            Prior::Range([lo, hi]) => Ci90::new(lo, hi),
        }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        self.ci()
            .map(|_| ())
            .map_err(|e| Error::InvalidPrior(format!("{name}: {e}")))
    }

    pub fn median(&self) -> f64 {
        match *self {
            Prior::Point(v) => v,
            Prior::Range([lo, hi]) => {
                if lo == hi {
                    lo
                } else {
                    (lo * hi).sqrt()
                }
            }
        }
    }

    /// Draws one value. Every prior consumes exactly one normal variate, so
    /// switching a parameter between point and range keeps the other
    /// parameters' draws aligned.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        match *self {
            Prior::Point(v) => v,
            Prior::Range([lo, hi]) => {
                if lo == hi {
                    lo
                } else {
                    let mu = 0.5 * (lo.ln() + hi.ln());
                    let sigma = (hi.ln() - lo.ln()) / (2.0 * Z95);
                    (mu + sigma * z).exp()
                }
            }
        }
    }

    pub fn scaled(&self, factor: f64) -> Prior {
        match *self {
            Prior::Point(v) => Prior::Point(v * factor),
            Prior::Range([lo, hi]) => Prior::Range([lo * factor, hi * factor]),
        }
    }
}

impl From<Ci90> for Prior {
    fn from(ci: Ci90) -> Self {
        if ci.is_degenerate() {
            Prior::Point(ci.low)
        } else {
            Prior::Range([ci.low, ci.high])
        }
    }
}

/// Samples of a scalar quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub values: Vec<f64>,
    pub unit: Unit,
    pub seed: u64,
}

impl SampleSet {
    pub fn new(values: Vec<f64>, unit: Unit, seed: u64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyInput("sample set"));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "sample values must be finite and non-negative, found {bad}"
            )));
        }
        Ok(Self { values, unit, seed })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn median(&self) -> f64 {
        quantile_unsorted(&self.values, 0.5)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// `[q05, q50, q95]`.
    pub fn summary(&self) -> [f64; 3] {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        [
            quantile_sorted(&sorted, 0.05),
            quantile_sorted(&sorted, 0.5),
            quantile_sorted(&sorted, 0.95),
        ]
    }
}

/// Draws `n` lognormal samples matching `ci` at its 5th and 95th percentiles.
pub fn sample_from_ci(ci: &Ci90, n: usize, seed: u64) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    // Re-validate: a Ci90 can only be built through `new`, but keep the error
    // contract explicit for callers constructing from raw bounds.
    let ci = Ci90::new(ci.low, ci.high)?.with_unit(ci.unit);
    let stream = SeedStream::new(seed);
    let values = (0..n as u64)
        .into_par_iter()
        .map(|i| ci.sample(&mut stream.rng(i)))
        .collect();
    SampleSet::new(values, ci.unit, seed)
}

/// Linear-interpolation quantile of an ascending-sorted slice.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = h - lo as f64;
    if frac == 0.0 {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

pub(crate) fn quantile_unsorted(values: &[f64], q: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    quantile_sorted(&sorted, q)
}

fn check_fractions(qs: &[f64]) -> Result<()> {
    if qs.iter().any(|q| !(0.0..=1.0).contains(q)) {
        return Err(Error::InvalidArgument(format!(
            "quantile fractions must lie in [0, 1]: {qs:?}"
        )));
    }
    if qs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(format!(
            "quantile fractions must be sorted ascending: {qs:?}"
        )));
    }
    Ok(())
}

/// Empirical quantiles (linear interpolation between order statistics).
pub fn quantiles(s: &SampleSet, qs: &[f64]) -> Result<Vec<f64>> {
    if s.values.is_empty() {
        return Err(Error::EmptyInput("sample set"));
    }
    check_fractions(qs)?;
    let mut sorted = s.values.clone();
    sorted.sort_by(f64::total_cmp);
    Ok(qs.iter().map(|&q| quantile_sorted(&sorted, q)).collect())
}

/// Normalizes weights to a cumulative distribution.
pub(crate) fn cumulative_weights(weights: &[f64]) -> Result<Vec<f64>> {
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidWeights(format!(
            "weights must be finite and non-negative: {weights:?}"
        )));
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidWeights("all weights are zero".into()));
    }
    let mut acc = 0.0;
    let mut cum: Vec<f64> = weights
        .iter()
        .map(|w| {
            acc += w / total;
            acc
        })
        .collect();
    if let Some(last) = cum.last_mut() {
        *last = 1.0;
    }
    Ok(cum)
}

pub(crate) fn pick_component(cumulative: &[f64], u: f64) -> usize {
    cumulative
        .iter()
        .position(|&c| u < c)
        .unwrap_or(cumulative.len() - 1)
}

/// Draws `n` samples from a weighted mixture of empirical distributions.
///
/// Each output sample first picks component `i` with probability
/// `weights[i]`, then a uniformly random value of that component.
pub fn mixture(sets: &[SampleSet], weights: &[f64], n: usize, seed: u64) -> Result<SampleSet> {
    if sets.is_empty() {
        return Err(Error::EmptyInput("mixture components"));
    }
    if sets.len() != weights.len() {
        return Err(Error::InvalidWeights(format!(
            "{} components but {} weights",
            sets.len(),
            weights.len()
        )));
    }
    let unit = sets[0].unit;
    if let Some(other) = sets.iter().find(|s| s.unit != unit) {
        return Err(Error::UnitMismatch {
            expected: unit,
            found: other.unit,
        });
    }
    if sets.iter().any(|s| s.values.is_empty()) {
        return Err(Error::EmptyInput("mixture component"));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let cum = cumulative_weights(weights)?;
    let stream = SeedStream::new(seed);
    let values = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream.rng(i);
            let set = &sets[pick_component(&cum, rng.random::<f64>())];
            set.values[rng.random_range(0..set.values.len())]
        })
        .collect();
    SampleSet::new(values, unit, seed)
}

/// Annual year grid, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct YearGrid {
    start: i32,
    end: i32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    start: i32,
    end: i32,
}

impl TryFrom<RawGrid> for YearGrid {
    type Error = Error;
    fn try_from(raw: RawGrid) -> Result<Self> {
        YearGrid::new(raw.start, raw.end)
    }
}

impl From<YearGrid> for RawGrid {
    fn from(g: YearGrid) -> Self {
        RawGrid {
            start: g.start,
            end: g.end,
        }
    }
}

impl Default for YearGrid {
    fn default() -> Self {
        Self {
            start: 1950,
            end: 2100,
        }
    }
}

impl YearGrid {
    pub fn new(start: i32, end: i32) -> Result<Self> {
        if start >= end {
            return Err(Error::Grid(format!(
                "start year {start} must precede end year {end}"
            )));
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.end
    }

    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.start..=self.end).contains(&year)
    }

    pub fn index_of(&self, year: i32) -> Option<usize> {
        self.contains(year).then(|| (year - self.start) as usize)
    }

    pub fn year_at(&self, index: usize) -> i32 {
        self.start + index as i32
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + Clone {
        self.start..=self.end
    }

    pub fn require(&self, year: i32) -> Result<usize> {
        self.index_of(year).ok_or_else(|| {
            Error::Grid(format!(
                "year {year} outside grid {}..={}",
                self.start, self.end
            ))
        })
    }
}

/// A `trials x years` matrix of sampled values over a [`YearGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySet {
    grid: YearGrid,
    unit: Unit,
    trials: usize,
    values: Vec<f64>,
}

impl TrajectorySet {
    /// Builds trial rows with `row(i)`, evaluated in parallel. Row `i` must
    /// depend only on `i` for the result to be deterministic.
    pub fn from_fn<F>(grid: YearGrid, unit: Unit, trials: usize, row: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<Vec<f64>> + Sync,
    {
        if trials == 0 {
            return Err(Error::InvalidArgument("trial count must be at least 1".into()));
        }
        let rows: Vec<Vec<f64>> = (0..trials)
            .into_par_iter()
            .map(&row)
            .collect::<Result<_>>()?;
        Self::from_rows(grid, unit, rows)
    }

    pub fn from_rows(grid: YearGrid, unit: Unit, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("trajectory set"));
        }
        let width = grid.len();
        let trials = rows.len();
        let mut values = Vec::with_capacity(trials * width);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != width {
                return Err(Error::Grid(format!(
                    "trial {i} has {} columns, grid has {width}",
                    r.len()
                )));
            }
            values.extend(r);
        }
        Ok(Self {
            grid,
            unit,
            trials,
            values,
        })
    }

    pub fn grid(&self) -> YearGrid {
        self.grid
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn row(&self, trial: usize) -> &[f64] {
        let w = self.grid.len();
        &self.values[trial * w..(trial + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.grid.len())
    }

    pub fn value(&self, trial: usize, year: i32) -> Option<f64> {
        let j = self.grid.index_of(year)?;
        self.row(trial).get(j).copied()
    }

    pub fn column(&self, year: i32) -> Result<Vec<f64>> {
        let j = self.grid.require(year)?;
        Ok(self.rows().map(|r| r[j]).collect())
    }

    /// The values at `year` as a sample set (one sample per trial).
    pub fn at_year(&self, year: i32) -> Result<SampleSet> {
        SampleSet::new(self.column(year)?, self.unit, 0)
    }

    /// Restricts the trajectory to `from..=to`.
    pub fn slice(&self, from: i32, to: i32) -> Result<Self> {
        let grid = YearGrid::new(from, to)?;
        let a = self.grid.require(from)?;
        let b = self.grid.require(to)?;
        let rows = self.rows().map(|r| r[a..=b].to_vec()).collect();
        Self::from_rows(grid, self.unit, rows)
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.rows().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
            ..self.clone()
        }
    }

    pub(crate) fn check_compatible(&self, other: &TrajectorySet) -> Result<()> {
        if self.unit != other.unit {
            return Err(Error::UnitMismatch {
                expected: self.unit,
                found: other.unit,
            });
        }
        if self.grid != other.grid {
            return Err(Error::Grid(format!(
                "grids differ: {}..={} vs {}..={}",
                self.grid.start, self.grid.end, other.grid.start, other.grid.end
            )));
        }
        Ok(())
    }
}

/// Per-year column quantile of a trajectory set.
pub fn trajectory_quantiles(t: &TrajectorySet, q: f64) -> Result<Vec<(i32, f64)>> {
    if t.trials == 0 {
        return Err(Error::EmptyInput("trajectory set"));
    }
    check_fractions(&[q])?;
    Ok(trajectory_quantile_bands(t, &[q])?
        .into_iter()
        .map(|(y, v)| (y, v[0]))
        .collect())
}

/// Several per-year quantiles at once, sorting each column a single time.
pub fn trajectory_quantile_bands(t: &TrajectorySet, qs: &[f64]) -> Result<Vec<(i32, Vec<f64>)>> {
    if t.trials == 0 {
        return Err(Error::EmptyInput("trajectory set"));
    }
    check_fractions(qs)?;
    let grid = t.grid;
    Ok((0..grid.len())
        .into_par_iter()
        .map(|j| {
            let mut col: Vec<f64> = t.rows().map(|r| r[j]).collect();
            col.sort_by(f64::total_cmp);
            (
                grid.year_at(j),
                qs.iter().map(|&q| quantile_sorted(&col, q)).collect(),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ci_rejects_bad_bounds() {
        assert!(matches!(Ci90::new(0.0, 1.0), Err(Error::InvalidPrior(_))));
        assert!(matches!(Ci90::new(-1.0, 1.0), Err(Error::InvalidPrior(_))));
        assert!(matches!(Ci90::new(2.0, 1.0), Err(Error::InvalidPrior(_))));
        assert!(Ci90::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn degenerate_ci_yields_constant() {
        let ci = Ci90::point(3.7e12).unwrap();
        let s = sample_from_ci(&ci, 1000, 9).unwrap();
        assert!(s.values.iter().all(|&v| v == 3.7e12));
    }

    #[test]
    fn lognormal_median_matches_geometric_mean() {
        let ci = Ci90::new(1e13, 1e15).unwrap();
        let s = sample_from_ci(&ci, 100_000, 1).unwrap();
        let med = s.median();
        assert!((med / 1e14 - 1.0).abs() < 0.02, "median {med:e}");
    }

    #[test]
    fn lognormal_percentiles_match_bounds() {
        let ci = Ci90::new(1e13, 1e15).unwrap();
        let s = sample_from_ci(&ci, 100_000, 2).unwrap();
        let q = quantiles(&s, &[0.05, 0.95]).unwrap();
        assert!((q[0] / 1e13 - 1.0).abs() < 0.05, "{:e}", q[0]);
        assert!((q[1] / 1e15 - 1.0).abs() < 0.05, "{:e}", q[1]);
    }

    #[test]
    fn words_per_day_prior_covers_ninety_percent() {
        let ci = Ci90::new(5e3, 2e4).unwrap();
        let s = sample_from_ci(&ci, 100_000, 3).unwrap();
        // Counting oracle: fraction of draws inside the interval.
        let inside = s.values.iter().filter(|&&v| (5e3..=2e4).contains(&v)).count();
        let frac = inside as f64 / s.len() as f64;
        assert!((frac - 0.90).abs() <= 0.015, "coverage {frac}");
    }

    #[test]
    fn quantile_examples() {
        let s = SampleSet::new((1..=100).map(f64::from).collect(), Unit::Dimensionless, 0).unwrap();
        assert_eq!(quantiles(&s, &[0.0]).unwrap(), vec![1.0]);
        assert_eq!(quantiles(&s, &[0.5]).unwrap(), vec![50.5]);
        assert_eq!(quantiles(&s, &[1.0]).unwrap(), vec![100.0]);
    }

    #[test]
    fn quantiles_reject_bad_fractions() {
        let s = SampleSet::new(vec![1.0, 2.0], Unit::Dimensionless, 0).unwrap();
        assert!(quantiles(&s, &[0.5, 0.1]).is_err());
        assert!(quantiles(&s, &[1.5]).is_err());
    }

    #[test]
    fn empty_sample_set_is_rejected() {
        assert!(matches!(
            SampleSet::new(vec![], Unit::Words, 0),
            Err(Error::EmptyInput(_))
        ));
        let s = SampleSet {
            values: vec![],
            unit: Unit::Words,
            seed: 0,
        };
        assert!(matches!(quantiles(&s, &[0.5]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn two_point_mixture() {
        let a = SampleSet::new(vec![0.0], Unit::Words, 0).unwrap();
        let b = SampleSet::new(vec![10.0], Unit::Words, 0).unwrap();
        let m = mixture(&[a, b], &[0.5, 0.5], 100_000, 4).unwrap();
        assert!(m.values.iter().all(|&v| v == 0.0 || v == 10.0));
        assert!((m.mean() - 5.0).abs() < 0.1, "mean {}", m.mean());
    }

    #[test]
    fn mixture_errors() {
        let a = SampleSet::new(vec![1.0], Unit::Words, 0).unwrap();
        let b = SampleSet::new(vec![1.0], Unit::Images, 0).unwrap();
        assert!(matches!(
            mixture(&[a.clone(), b], &[1.0, 1.0], 10, 0),
            Err(Error::UnitMismatch { .. })
        ));
        assert!(matches!(
            mixture(&[a.clone(), a], &[0.0, 0.0], 10, 0),
            Err(Error::InvalidWeights(_))
        ));
    }

    #[test]
    fn trajectory_quantile_examples() {
        let grid = YearGrid::new(2000, 2003).unwrap();
        let one = TrajectorySet::from_rows(grid, Unit::Words, vec![vec![1.0, 2.0, 3.0, 5.0]]).unwrap();
        for q in [0.0, 0.3, 1.0] {
            let c = trajectory_quantiles(&one, q).unwrap();
            assert_eq!(c.iter().map(|p| p.1).collect::<Vec<_>>(), vec![1.0, 2.0, 3.0, 5.0]);
        }
        let two = TrajectorySet::from_rows(grid, Unit::Words, vec![vec![1.0; 4], vec![3.0; 4]]).unwrap();
        let c = trajectory_quantiles(&two, 0.5).unwrap();
        assert!(c.iter().all(|&(_, v)| v == 2.0));
        assert_eq!(c[0].0, 2000);
    }

    #[test]
    fn seed_streams_are_distinct() {
        let s = SeedStream::new(7);
        assert_ne!(s.seed_for(0), s.seed_for(1));
        assert_ne!(s.fork("a").seed_for(0), s.fork("b").seed_for(0));
        assert_eq!(s.fork("a").seed_for(3), SeedStream::new(7).fork("a").seed_for(3));
    }

    #[test]
    fn grid_basics() {
        assert!(YearGrid::new(2000, 2000).is_err());
        let g = YearGrid::default();
        assert_eq!(g.len(), 151);
        assert_eq!(g.index_of(2022), Some(72));
        assert_eq!(g.index_of(2101), None);
    }
}
