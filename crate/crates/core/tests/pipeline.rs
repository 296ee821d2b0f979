use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use datastock::hq::{hq_components, hq_total_stock, HqPriors};
use datastock::io::{parse_population, POPULATION_CSV};
use datastock::mc::{TrajectorySet, Unit, YearGrid};
use datastock::pipeline::{run_results, Domain, ProjectionKind, RunResults, MANIFEST_FILE};
use datastock::stock::growth_rate;
use datastock::{run_pipeline, ReportBundle, RunConfig};

fn default_results() -> &'static RunResults {
    static R: OnceLock<RunResults> = OnceLock::new();
    R.get_or_init(|| run_results(&RunConfig::default()).unwrap())
}

fn default_bundle() -> &'static ReportBundle {
    static B: OnceLock<ReportBundle> = OnceLock::new();
    B.get_or_init(|| run_pipeline(&RunConfig::default()).unwrap())
}

fn within(value: f64, target: f64, factor: f64) -> bool {
    value >= target / factor && value <= target * factor
}

#[test]
fn language_aggregate_interval() {
    let [lo, mid, hi] = default_results().language.aggregate.at_year(2022).unwrap().summary();
    assert!(within(mid, 7.41e14, 3.0), "median {mid:e}");
    assert!(within(lo, 6.85e13, 10.0), "q05 {lo:e}");
    assert!(within(hi, 7.13e16, 10.0), "q95 {hi:e}");
    assert!(lo <= 6.85e13 * 10.0 && hi >= 7.13e16 / 10.0);
}

#[test]
fn high_quality_median_and_interval() {
    let [lo, mid, hi] = default_results().high_quality.stock.at_year(2022).unwrap().summary();
    assert!(within(mid, 9e12, 2.0), "median {mid:e}");
    assert!(within(lo, 4.6e12, 2.0) && within(hi, 1.7e13, 2.0), "[{lo:e}, {hi:e}]");
}

#[test]
fn paper_and_book_intervals() {
    let c = hq_components(&HqPriors::default(), 10_000, 7).unwrap();
    let [plo, _, phi] = c.paper_words.summary();
    assert!((plo / 6e11 - 1.0).abs() <= 0.25 && (phi / 1e12 - 1.0).abs() <= 0.25, "papers [{plo:e}, {phi:e}]");
    let [blo, _, bhi] = c.book_words.summary();
    assert!(within(blo, 6.2e11, 2.0) && within(bhi, 1.8e12, 2.0), "books [{blo:e}, {bhi:e}]");
}

#[test]
fn high_quality_stock_is_exponential_per_trial() {
    let grid = YearGrid::new(2022, 2100).unwrap();
    let t = hq_total_stock(&HqPriors::default(), grid, 200, 3).unwrap();
    for row in t.rows() {
        let l: Vec<f64> = row.iter().map(|v| v.ln()).collect();
        assert!(l.windows(3).all(|w| (w[2] - 2.0 * w[1] + w[0]).abs() < 1e-9));
    }
}

#[test]
fn growth_rate_of_constant_production() {
    let grid = YearGrid::new(2020, 2030).unwrap();
    let (p, s0) = (3e11, 6e12);
    let row: Vec<f64> = grid.years().map(|y| s0 + p * f64::from(y - 2020)).collect();
    let t = TrajectorySet::from_rows(grid, Unit::Words, vec![row]).unwrap();
    let g = growth_rate(&t, 2022).unwrap();
    assert_eq!(g.values[0], p / (s0 + 2.0 * p));
}

#[test]
fn shipped_population_covers_default_grid() {
    let table = parse_population(POPULATION_CSV, "population.csv").unwrap();
    assert!(table.covers(&YearGrid::new(1950, 2100).unwrap()));
}

#[test]
fn language_high_crossing_shows_in_projection() {
    let r = default_results();
    let d = r.domain(Domain::LanguageHigh);
    for k in ProjectionKind::ALL {
        let e = &d.projection(k).exhaustion;
        assert!(e.median().is_some());
        assert!(e.censored_count < e.trials() / 10);
    }
    let chart = &default_bundle()
        .charts
        .iter()
        .find(|(n, _)| n == "fig_projection_language_high")
        .unwrap()
        .1;
    // Stock band plus one band per projection, and their medians cross.
    assert_eq!(chart.bands.len(), 3);
    let stock = &chart.bands[0].points;
    for proj in &chart.bands[1..] {
        let below = proj.points.iter().zip(stock).any(|(p, s)| p.1[1] < s.1[1]);
        let above = proj.points.iter().zip(stock).any(|(p, s)| p.1[1] >= s.1[1]);
        assert!(below && above, "{} never crosses the stock", proj.label);
    }
}

#[test]
fn exhaustion_histograms_are_normalized() {
    for d in &default_results().domains {
        for p in &d.projections {
            assert!((p.histogram.total() - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn exhaustion_table_has_six_rows() {
    let t = default_bundle().table("table_exhaustion").unwrap();
    assert_eq!(t.rows.len(), 6);
}

#[test]
fn language_stock_table_has_model_rows_and_aggregate() {
    let t = default_bundle().table("language_stock").unwrap();
    assert_eq!(t.rows.len(), 6);
    assert_eq!(t.rows[5][0].render(), "Aggregated model");
}

// Relative half-width of the order-statistic interval around the median,
// roughly two standard errors of the sample median.
fn median_half_width(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let (n, k) = (v.len(), (v.len() as f64).sqrt() as usize);
    (v[n / 2 + k] - v[n / 2 - k]) / (2.0 * v[n / 2])
}

#[test]
fn seed_change_moves_medians_little() {
    let a = default_results();
    let b = run_results(&RunConfig { seed: 99, ..RunConfig::default() }).unwrap();
    let models = a.language.models.iter().chain(&a.vision.models).map(|m| &m.1);
    let others = b.language.models.iter().chain(&b.vision.models).map(|m| &m.1);
    let pairs = models.zip(others).chain([
        (&a.language.aggregate, &b.language.aggregate),
        (&a.vision.aggregate, &b.vision.aggregate),
        (&a.high_quality.stock, &b.high_quality.stock),
    ]);
    for (x, y) in pairs {
        let (sx, sy) = (x.at_year(2022).unwrap(), y.at_year(2022).unwrap());
        // 2% unless sampling error makes that unreachable: four standard
        // errors of the difference of two independent medians.
        let tol = f64::max(0.02, 2.0 * std::f64::consts::SQRT_2 * median_half_width(&sx.values));
        let (mx, my) = (sx.median(), sy.median());
        assert!((mx / my - 1.0).abs() < tol, "{mx:e} vs {my:e} (tol {tol:.3})");
    }
    for d in Domain::ALL {
        for k in ProjectionKind::ALL {
            let mx = a.domain(d).projection(k).exhaustion.median().unwrap();
            let my = b.domain(d).projection(k).exhaustion.median().unwrap();
            // Relative to the years elapsed since 2022, not to the calendar.
            assert!((mx - my).abs() / (mx - 2022.0).max(1.0) < 0.02, "{d} {}: {mx} vs {my}", k.name());
        }
    }
}

// Replaces every [low, high] prior under `priors` and `trends` with its
// lognormal median so a single trial is fully deterministic.
fn pin_priors(v: &mut toml::Value) {
    match v {
        toml::Value::Table(t) => t.iter_mut().for_each(|(_, v)| pin_priors(v)),
        toml::Value::Array(a) if a.len() == 2 => {
            let (lo, hi) = (a[0].as_float().unwrap(), a[1].as_float().unwrap());
            *v = toml::Value::Float((lo * hi).sqrt());
        }
        _ => {}
    }
}

#[test]
fn single_degenerate_trial_is_reproducible() {
    let mut doc: toml::Value = toml::from_str(&RunConfig::default().to_toml().unwrap()).unwrap();
    let t = doc.as_table_mut().unwrap();
    pin_priors(t.get_mut("priors").unwrap());
    pin_priors(t.get_mut("trends").unwrap());
    t.insert("trials".into(), toml::Value::Integer(1));
    let config = RunConfig::from_toml(&toml::to_string(&doc).unwrap()).unwrap();
    let a = run_pipeline(&config).unwrap();
    assert_eq!(a.manifest.trials, 1);
    assert_eq!(a.files, run_pipeline(&config).unwrap().files);
}

#[test]
fn manifest_reproduces_the_bundle() {
    let config = RunConfig { trials: 500, seed: 11, ..RunConfig::default() };
    let bundle = run_pipeline(&config).unwrap();
    let dir = tempfile::tempdir().unwrap();
    bundle.write_to(dir.path()).unwrap();
    let reloaded = RunConfig::load(&dir.path().join(MANIFEST_FILE)).unwrap();
    assert_eq!(reloaded, config);
    assert_eq!(run_pipeline(&reloaded).unwrap().files, bundle.files);
    for (name, digest) in &bundle.manifest.artifacts {
        let bytes = std::fs::read(dir.path().join(name)).unwrap();
        assert_eq!(&hex::encode(Sha256::digest(&bytes)), digest);
    }
}

#[test]
fn relative_input_paths_resolve_against_the_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("pop.csv"), POPULATION_CSV).unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "trials = 50\n[inputs]\npopulation = \"pop.csv\"\n").unwrap();
    let config = RunConfig::load(&cfg).unwrap();
    assert_eq!(config.inputs.population.as_deref(), Some(dir.path().join("pop.csv").as_path()));
    let r = run_results(&config).unwrap();
    assert_eq!(r.users.population, default_results().users.population);
}
