use datastock::demographics::{person_years, Base, InternetUsersModel, PenetrationParams};
use datastock::io::{parse_population, POPULATION_CSV};
use datastock::mc::{
    mixture, quantile_sorted, quantiles, sample_from_ci, trajectory_quantiles, Ci90, SampleSet,
    TrajectorySet, Unit, YearGrid,
};
use datastock::projection::{
    constrain_projection, crossing_year, historical_projection, TrendParams,
};
use datastock::mc::Prior;
use datastock::stock::aggregate_stock;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

// Independent crossing oracle: fine linear scan in log space.
fn scan_crossing(grid: YearGrid, p: &[f64], s: &[f64]) -> Option<f64> {
    if p[0] >= s[0] {
        return Some(f64::from(grid.start()));
    }
    for j in 1..p.len() {
        if p[j] >= s[j] {
            let gap = |k: usize| p[k].ln() - s[k].ln();
            let (a, b) = (gap(j - 1), gap(j));
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if a + (b - a) * mid >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Some(f64::from(grid.year_at(j - 1)) + hi);
        }
    }
    None
}

fn monotone_rows(n: usize, len: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0f64..1e3, len), n).prop_map(|rows| {
        rows.into_iter()
            .map(|r| {
                r.into_iter()
                    .scan(1.0, |acc, x| {
                        *acc += x;
                        Some(*acc)
                    })
                    .collect()
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ci_samples_cover_ninety_percent(lo in 1e-3f64..1e12, ratio in 1.5f64..1e4, seed in any::<u64>()) {
        let hi = lo * ratio;
        let s = sample_from_ci(&Ci90::new(lo, hi).unwrap(), 20_000, seed).unwrap();
        let inside = s.values.iter().filter(|v| (lo..=hi).contains(*v)).count() as f64 / 2e4;
        prop_assert!((inside - 0.9).abs() < 0.015, "coverage {inside}");
        // Sampling error of a tail quantile grows with the log-scale width.
        let tol = 0.04 * ratio.ln().max(1.0);
        let q = quantiles(&s, &[0.05, 0.95]).unwrap();
        prop_assert!((q[0] / lo).ln().abs() < tol);
        prop_assert!((q[1] / hi).ln().abs() < tol);
    }

    #[test]
    fn quantiles_are_monotone_and_bounded(values in prop::collection::vec(0.0f64..1e9, 1..200)) {
        let s = SampleSet::new(values.clone(), Unit::Words, 0).unwrap();
        let qs: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let out = quantiles(&s, &qs).unwrap();
        prop_assert!(out.windows(2).all(|w| w[0] <= w[1]));
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(0.0, f64::max);
        prop_assert_eq!(out[0], min);
        prop_assert_eq!(out[20], max);
    }

    #[test]
    fn mixture_samples_come_from_components(a in prop::collection::vec(0.0f64..10.0, 1..50),
                                            b in prop::collection::vec(20.0f64..30.0, 1..50),
                                            w in 0.05f64..0.95, seed in any::<u64>()) {
        let sa = SampleSet::new(a.clone(), Unit::Words, 1).unwrap();
        let sb = SampleSet::new(b.clone(), Unit::Words, 2).unwrap();
        let m = mixture(&[sa, sb], &[w, 1.0 - w], 4000, seed).unwrap();
        prop_assert!(m.values.iter().all(|v| a.contains(v) || b.contains(v)));
        let share = m.values.iter().filter(|v| **v < 15.0).count() as f64 / 4000.0;
        prop_assert!((share - w).abs() < 0.05, "share {share} vs {w}");
    }

    #[test]
    fn single_component_mixture_keeps_distribution(values in prop::collection::vec(0.0f64..1e6, 5..100), seed in any::<u64>()) {
        let s = SampleSet::new(values, Unit::Words, 0).unwrap();
        let m = mixture(std::slice::from_ref(&s), &[1.0], 20_000, seed).unwrap();
        let cdf = |v: &[f64], x: f64| v.iter().filter(|y| **y <= x).count() as f64 / v.len() as f64;
        for x in &s.values {
            prop_assert!((cdf(&s.values, *x) - cdf(&m.values, *x)).abs() < 0.02);
        }
    }

    #[test]
    fn aggregate_keeps_monotone_trials(a in monotone_rows(20, 12), b in monotone_rows(20, 12), seed in any::<u64>()) {
        let grid = YearGrid::new(2020, 2031).unwrap();
        let ta = TrajectorySet::from_rows(grid, Unit::Words, a).unwrap();
        let tb = TrajectorySet::from_rows(grid, Unit::Words, b).unwrap();
        let agg = aggregate_stock(&[ta.clone(), tb.clone()], &[1.0, 1.0], seed).unwrap();
        prop_assert!(agg.is_non_decreasing());
        for (i, row) in agg.rows().enumerate() {
            prop_assert!(row == ta.row(i) || row == tb.row(i));
        }
        let median = trajectory_quantiles(&agg, 0.5).unwrap();
        prop_assert!(median.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn constrained_never_exceeds_stock(stock in monotone_rows(10, 30), d0 in 1.0f64..1e3, tau in 6.0f64..60.0, seed in any::<u64>()) {
        let grid = YearGrid::new(2022, 2051).unwrap();
        let stock = TrajectorySet::from_rows(grid, Unit::Words, stock).unwrap();
        let trend = TrendParams { start_size: d0, start_year: 2022, doubling_months: Prior::Point(tau) };
        let proj = historical_projection(&trend, grid, 10, seed, Unit::Words).unwrap();
        let c = constrain_projection(&proj, &stock).unwrap();
        for (cr, sr) in c.rows().zip(stock.rows()) {
            prop_assert!(cr.iter().zip(sr).all(|(cv, sv)| cv <= sv));
        }
    }

    #[test]
    fn historical_projection_is_log_linear(d0 in 1e3f64..1e13, lo in 5.0f64..30.0, widen in 1.0f64..3.0, seed in any::<u64>()) {
        let grid = YearGrid::new(2022, 2060).unwrap();
        let trend = TrendParams {
            start_size: d0,
            start_year: 2022,
            doubling_months: Prior::Range([lo, lo * widen]),
        };
        let p = historical_projection(&trend, grid, 16, seed, Unit::Words).unwrap();
        for row in p.rows() {
            prop_assert!((row[0] / d0 - 1.0).abs() < 1e-12);
            let l: Vec<f64> = row.iter().map(|v| v.ln()).collect();
            for w in l.windows(3) {
                prop_assert!((w[2] - 2.0 * w[1] + w[0]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn crossing_matches_scan_oracle(s in 1e9f64..1e13, g in 0.0f64..0.3, d0 in 1e6f64..1e12, r in 0.05f64..1.5) {
        let grid = YearGrid::new(2022, 2100).unwrap();
        let stock: Vec<f64> = grid.years().map(|y| s * (1.0 + g).powi(y - 2022)).collect();
        let proj: Vec<f64> = grid.years().map(|y| d0 * (1.0 + r).powi(y - 2022)).collect();
        let got = crossing_year(grid, &proj, &stock);
        let want = scan_crossing(grid, &proj, &stock);
        match (got, want) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}"),
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn quantile_sorted_interpolates_between_neighbours(values in prop::collection::vec(0.0f64..1e3, 2..60), q in 0.0f64..=1.0) {
        let mut v = values;
        v.sort_by(f64::total_cmp);
        let x = quantile_sorted(&v, q);
        let h = q * (v.len() - 1) as f64;
        let (lo, hi) = (v[h.floor() as usize], v[h.ceil() as usize]);
        prop_assert!(x >= lo - 1e-9 && x <= hi + 1e-9);
    }

    #[test]
    fn person_years_is_additive(a in 1950i32..2090, mid in 0i32..5, len in 0i32..5, f in 0.1f64..1.0, t0 in 1990.0f64..2020.0) {
        let m = model(f, t0, 0.2);
        let (b, c) = (a + mid, a + mid + len);
        let whole = person_years(&m, a, c, Base::InternetUsers).unwrap();
        let parts = person_years(&m, a, b, Base::InternetUsers).unwrap()
            + person_years(&m, b, c, Base::InternetUsers).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-12 * whole.max(1.0));
    }
}

fn model(ceiling: f64, midpoint: f64, steepness: f64) -> InternetUsersModel {
    InternetUsersModel::new(
        parse_population(POPULATION_CSV, "population.csv").unwrap(),
        PenetrationParams::new(ceiling, midpoint, steepness).unwrap(),
    )
}

#[test]
fn person_years_agrees_with_monthly_oracle() {
    let m = model(0.8, 2011.0, 0.2);
    for base in [Base::Population, Base::InternetUsers] {
        let annual = person_years(&m, 1990, 2050, base).unwrap();
        let value = |t: f64| match base {
            Base::Population => m.population.at(t).value,
            Base::InternetUsers => m.internet_users(t).value,
        };
        let steps = 60 * 12;
        let h = 1.0 / 12.0;
        let monthly: f64 = (0..steps)
            .map(|k| {
                let t = 1990.0 + k as f64 * h;
                0.5 * h * (value(t) + value(t + h))
            })
            .sum();
        assert!((annual / monthly - 1.0).abs() < 0.01, "{base:?}: {annual:e} vs {monthly:e}");
    }
}
