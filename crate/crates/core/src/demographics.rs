//! Population, internet penetration and internet-user counts.
//!
//! Population comes from an ingested annual table. Penetration (the share of
//! people online) is a three-parameter sigmoid with an explicit ceiling fitted
//! to historical shares. The product of the two gives internet users, and
//! person-year integrals of either curve drive the production models.
//!
//! This module also hosts the growth-model comparison used to sanity-check
//! the "population x sigmoid" shape against a monthly activity series.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{multi_start, Bounds, LmOptions};
use crate::mc::YearGrid;

/// A value plus a flag telling whether it came from outside the data range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged<T> {
    pub value: T,
    pub extrapolated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationTable {
    rows: Vec<(i32, f64)>,
}

impl PopulationTable {
    pub fn new(rows: Vec<(i32, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("population table"));
        }
        if let Some(w) = rows.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::Validation {
                file: "population".into(),
                message: format!("years must be strictly increasing ({} then {})", w[0].0, w[1].0),
            });
        }
        if let Some((y, p)) = rows.iter().find(|(_, p)| !(p.is_finite() && *p > 0.0)) {
            return Err(Error::Validation {
                file: "population".into(),
                message: format!("population for {y} must be positive, got {p}"),
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[(i32, f64)] {
        &self.rows
    }

    pub fn first_year(&self) -> i32 {
        self.rows[0].0
    }

    pub fn last_year(&self) -> i32 {
        self.rows[self.rows.len() - 1].0
    }

    pub fn covers(&self, grid: &YearGrid) -> bool {
        self.first_year() <= grid.start() && self.last_year() >= grid.end()
    }

    /// Linear interpolation between table years, flat outside.
    pub fn at(&self, year: f64) -> Flagged<f64> {
        let (first, last) = (self.rows[0], self.rows[self.rows.len() - 1]);
        if year < f64::from(first.0) {
            return Flagged {
                value: first.1,
                extrapolated: true,
            };
        }
        if year > f64::from(last.0) {
            return Flagged {
                value: last.1,
                extrapolated: true,
            };
        }
        let i = self.rows.partition_point(|(y, _)| f64::from(*y) <= year);
        let value = if i == 0 {
            first.1
        } else if i == self.rows.len() {
            last.1
        } else {
            let (y0, p0) = self.rows[i - 1];
            let (y1, p1) = self.rows[i];
            let t = (year - f64::from(y0)) / f64::from(y1 - y0);
            p0 + t * (p1 - p0)
        };
        Flagged {
            value,
            extrapolated: false,
        }
    }
}

/// `fraction(t) = ceiling / (1 + exp(-steepness * (t - midpoint)))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PenetrationParams {
    pub ceiling: f64,
    pub midpoint: f64,
    pub steepness: f64,
}

impl PenetrationParams {
    pub fn new(ceiling: f64, midpoint: f64, steepness: f64) -> Result<Self> {
        if !(ceiling > 0.0 && ceiling <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "penetration ceiling must lie in (0, 1], got {ceiling}"
            )));
        }
        if !(steepness > 0.0 && steepness.is_finite() && midpoint.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "penetration steepness must be positive, got {steepness}"
            )));
        }
        Ok(Self {
            ceiling,
            midpoint,
            steepness,
        })
    }

    pub fn fraction(&self, year: f64) -> f64 {
        self.ceiling / (1.0 + (-self.steepness * (year - self.midpoint)).exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmoidFit {
    pub params: PenetrationParams,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Least-squares fit of the penetration sigmoid to `(year, fraction)` points.
pub fn fit_sigmoid(series: &[(f64, f64)]) -> Result<SigmoidFit> {
    if series.len() < 4 {
        return Err(Error::InvalidArgument(format!(
            "sigmoid fit needs at least 4 points, got {}",
            series.len()
        )));
    }
    if let Some((y, f)) = series.iter().find(|(_, f)| !(0.0..=1.0).contains(f)) {
        return Err(Error::InvalidArgument(format!(
            "penetration fraction for {y} outside [0, 1]: {f}"
        )));
    }
    let t_min = series.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let t_max = series.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let span = (t_max - t_min).max(1.0);
    let mid = 0.5 * (t_min + t_max);
    let top = series.iter().map(|p| p.1).fold(0.0, f64::max).max(0.05);

    let residuals = |p: &[f64], r: &mut [f64]| {
        for (ri, &(t, f)) in r.iter_mut().zip(series) {
            *ri = p[0] / (1.0 + (-p[2] * (t - p[1])).exp()) - f;
        }
    };
    let bounds = Bounds {
        lower: vec![1e-9, t_min - 10.0 * span, 1e-6],
        upper: vec![1.0, t_max + 10.0 * span, 10.0],
    };
    let starts = [
        vec![1.0, mid, 4.0 / span],
        vec![0.9, mid, 8.0 / span],
        vec![0.7, mid + 0.25 * span, 12.0 / span],
        vec![top, t_max, 6.0 / span],
        vec![1.0, t_min, 2.0 / span],
    ];
    let fit = multi_start(residuals, series.len(), &starts, &bounds, LmOptions::default())?;
    Ok(SigmoidFit {
        params: PenetrationParams::new(fit.params[0], fit.params[1], fit.params[2])?,
        residual_norm: fit.residual_norm(),
        iterations: fit.iterations,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InternetUsersModel {
    pub population: PopulationTable,
    pub penetration: PenetrationParams,
}

/// Which curve a person-year integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    Population,
    InternetUsers,
}

/// Annual population and internet-user values sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnualCurves {
    pub grid: YearGrid,
    pub population: Vec<f64>,
    pub internet_users: Vec<f64>,
    pub extrapolated: bool,
}

impl InternetUsersModel {
    pub fn new(population: PopulationTable, penetration: PenetrationParams) -> Self {
        Self {
            population,
            penetration,
        }
    }

    pub fn internet_users(&self, year: f64) -> Flagged<f64> {
        let pop = self.population.at(year);
        Flagged {
            value: pop.value * self.penetration.fraction(year),
            extrapolated: pop.extrapolated,
        }
    }

    fn base_value(&self, year: i32, base: Base) -> f64 {
        match base {
            Base::Population => self.population.at(f64::from(year)).value,
            Base::InternetUsers => self.internet_users(f64::from(year)).value,
        }
    }

    pub fn annual_curves(&self, grid: YearGrid) -> AnnualCurves {
        let population: Vec<f64> = grid
            .years()
            .map(|y| self.population.at(f64::from(y)).value)
            .collect();
        let internet_users = grid
            .years()
            .zip(&population)
            .map(|(y, p)| p * self.penetration.fraction(f64::from(y)))
            .collect();
        AnnualCurves {
            grid,
            population,
            internet_users,
            extrapolated: !self.population.covers(&grid),
        }
    }
}

/// Users online in `year`: `population(year) * penetration(year)`.
pub fn internet_users(m: &InternetUsersModel, year: f64) -> Flagged<f64> {
    m.internet_users(year)
}

/// Trapezoidal integral of the chosen base curve over `[year_a, year_b]` on
/// the annual grid.
pub fn person_years(m: &InternetUsersModel, year_a: i32, year_b: i32, base: Base) -> Result<f64> {
    if year_a > year_b {
        return Err(Error::EmptyInterval {
            from: year_a,
            to: year_b,
        });
    }
    let mut total = 0.0;
    let mut prev = m.base_value(year_a, base);
    for y in year_a + 1..=year_b {
        let cur = m.base_value(y, base);
        total += 0.5 * (prev + cur);
        prev = cur;
    }
    Ok(total)
}

/// Calendar month in a monthly activity series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonthStamp {
    pub year: i32,
    pub month: u32,
}

impl MonthStamp {
    pub fn new(year: i32, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidArgument(format!("month out of range: {month}")));
        }
        Ok(Self { year, month })
    }

    /// Mid-month as a decimal year.
    pub fn decimal_year(&self) -> f64 {
        f64::from(self.year) + (f64::from(self.month) - 0.5) / 12.0
    }
}

impl FromStr for MonthStamp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected YYYY-MM, got {s:?}"));
        let (y, m) = s.trim().split_once('-').ok_or_else(bad)?;
        if y.len() != 4 || m.len() != 2 {
            return Err(bad());
        }
        MonthStamp::new(y.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for MonthStamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthFamily {
    Exponential,
    Sigmoid,
    SigmoidExponential,
}

impl GrowthFamily {
    pub const ALL: [GrowthFamily; 3] = [
        GrowthFamily::Exponential,
        GrowthFamily::Sigmoid,
        GrowthFamily::SigmoidExponential,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            GrowthFamily::Exponential => "exponential",
            GrowthFamily::Sigmoid => "sigmoid",
            GrowthFamily::SigmoidExponential => "sigmoid*exponential",
        }
    }

    /// Natural log of the curve at `x` years after the series start.
    ///
    /// Parameters: exponential `[ln a, b]`; sigmoid `[ln L, k, m]`;
    /// sigmoid*exponential `[ln L, k, m, b]`.
    pub fn log_value(&self, p: &[f64], x: f64) -> f64 {
        match self {
            GrowthFamily::Exponential => p[0] + p[1] * x,
            GrowthFamily::Sigmoid => p[0] - softplus(-p[1] * (x - p[2])),
            GrowthFamily::SigmoidExponential => p[0] - softplus(-p[1] * (x - p[2])) + p[3] * x,
        }
    }

    pub fn value(&self, p: &[f64], x: f64) -> f64 {
        self.log_value(p, x).exp()
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 30.0 {
        z
    } else {
        z.exp().ln_1p()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyFit {
    pub family: GrowthFamily,
    pub params: Vec<f64>,
    /// RMSE of log counts over the fitting window.
    pub train_log_rmse: f64,
    /// RMSE of raw counts over the held-out final months.
    pub holdout_rmse: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthComparison {
    /// Decimal year that `x = 0` refers to in the fitted parameters.
    pub origin: f64,
    pub holdout_months: usize,
    /// Fits sorted by ascending holdout RMSE, simpler family first on ties.
    pub ranking: Vec<FamilyFit>,
}

impl GrowthComparison {
    pub fn winner(&self) -> GrowthFamily {
        self.ranking[0].family
    }

    pub fn fit(&self, family: GrowthFamily) -> &FamilyFit {
        self.ranking
            .iter()
            .find(|f| f.family == family)
            .expect("every family is fitted")
    }

    pub fn predict(&self, family: GrowthFamily, month: MonthStamp) -> f64 {
        family.value(&self.fit(family).params, month.decimal_year() - self.origin)
    }
}

pub const HOLDOUT_MONTHS: usize = 24;
const MIN_TRAINING_MONTHS: usize = 6;
const TIE_TOLERANCE: f64 = 1e-9;

/// Fits exponential, sigmoid and sigmoid*exponential curves to all but the
/// final 24 months of a series and ranks them by RMSE on those final months.
///
/// Curves are fitted to log counts so that early, small months carry weight;
/// the holdout score is on raw counts, where the families differ most.
pub fn compare_growth_models(series: &[(MonthStamp, f64)]) -> Result<GrowthComparison> {
    let needed = HOLDOUT_MONTHS + MIN_TRAINING_MONTHS;
    if series.len() < needed {
        return Err(Error::InvalidArgument(format!(
            "growth comparison needs at least {needed} monthly points, got {}",
            series.len()
        )));
    }
    if let Some((m, v)) = series.iter().find(|(_, v)| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::InvalidArgument(format!("invalid count for {m}: {v}")));
    }
    let origin = series[0].0.decimal_year();
    let split = series.len() - HOLDOUT_MONTHS;
    let (train, holdout) = series.split_at(split);
    let points: Vec<(f64, f64)> = train
        .iter()
        .filter(|(_, v)| *v > 0.0)
        .map(|(m, v)| (m.decimal_year() - origin, v.ln()))
        .collect();
    if points.len() < MIN_TRAINING_MONTHS {
        return Err(Error::FitFailure {
            iterations: 0,
            best_sse: f64::NAN,
            best_params: vec![],
        });
    }

    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let span = points.last().map(|p| p.0).unwrap_or(1.0).max(1.0);
    let top = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);

    let mut ranking = Vec::with_capacity(3);
    for family in GrowthFamily::ALL {
        let (starts, bounds): (Vec<Vec<f64>>, Bounds) = match family {
            GrowthFamily::Exponential => (
                vec![
                    vec![intercept, slope],
                    vec![intercept, 0.5 * slope],
                    vec![intercept, 2.0 * slope],
                    vec![my, 0.0],
                    vec![top, slope],
                ],
                Bounds::unbounded(2),
            ),
            GrowthFamily::Sigmoid => (
                [0.2, 0.4, 0.6, 0.8, 1.0]
                    .iter()
                    .map(|f| vec![top + 0.5, 8.0 / span, f * span])
                    .collect(),
                Bounds {
                    lower: vec![f64::NEG_INFINITY, 1e-4, -5.0 * span],
                    upper: vec![top + 20.0, 20.0, 2.0 * span],
                },
            ),
            GrowthFamily::SigmoidExponential => (
                [0.2, 0.4, 0.6, 0.8, 1.0]
                    .iter()
                    .map(|f| vec![top + 0.5 - 0.5 * slope * span, 8.0 / span, f * span, 0.5 * slope])
                    .collect(),
                Bounds {
                    lower: vec![f64::NEG_INFINITY, 1e-4, -5.0 * span, -5.0],
                    upper: vec![top + 20.0, 20.0, 2.0 * span, 5.0],
                },
            ),
        };
        let residuals = |p: &[f64], r: &mut [f64]| {
            for (ri, &(x, ly)) in r.iter_mut().zip(&points) {
                *ri = family.log_value(p, x) - ly;
            }
        };
        let fit = multi_start(residuals, points.len(), &starts, &bounds, LmOptions::default())?;
        let holdout_rmse = (holdout
            .iter()
            .map(|(m, v)| (family.value(&fit.params, m.decimal_year() - origin) - v).powi(2))
            .sum::<f64>()
            / holdout.len() as f64)
            .sqrt();
        ranking.push(FamilyFit {
            family,
            train_log_rmse: (fit.sse / n).sqrt(),
            params: fit.params,
            holdout_rmse,
        });
    }
    // Scores closer than TIE_TOLERANCE of the holdout level are numerically
    // equal; the family with fewer parameters then ranks first.
    let level = (holdout.iter().map(|(_, v)| v * v).sum::<f64>() / holdout.len() as f64).sqrt();
    let resolution = (TIE_TOLERANCE * level).max(f64::MIN_POSITIVE);
    ranking.sort_by(|a, b| {
        let (qa, qb) = ((a.holdout_rmse / resolution).floor(), (b.holdout_rmse / resolution).floor());
        qa.total_cmp(&qb).then(a.params.len().cmp(&b.params.len()))
    });
    Ok(GrowthComparison {
        origin,
        holdout_months: HOLDOUT_MONTHS,
        ranking,
    })
}
