//! End-to-end runs: inputs and configuration in, tables, charts and a
//! manifest out.
//!
//! Every report is rendered into memory first, so a bundle can be digested,
//! compared and written without touching the results again.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::demographics::{
    compare_growth_models, fit_sigmoid, AnnualCurves, GrowthComparison, GrowthFamily, InternetUsersModel, SigmoidFit,
};
use crate::error::{Error, Result, StageContext};
use crate::hq::{classify_composition, hq_components, hq_total_stock, ClassShares, HqComponents};
use crate::io::{load_inputs, Inputs};
use crate::mc::{trajectory_quantile_bands, SampleSet, SeedStream, TrajectorySet, Unit, YearGrid};
use crate::projection::{
    compute_optimal_projection, constrain_projection, doubling_time_ci, exhaustion_distribution,
    exhaustion_probability_by_year, historical_projection, ExhaustionHistogram, ExhaustionResult, ScalingAnchor,
    TrendParams,
};
use crate::report::{render_svg, Band, Cell, Chart, Scale, Series, Table};
use crate::stock::{
    aggregate_stock, growth_rate, language_models, stock_trajectory, vision_models, Demography, StockModelSpec,
    ANCHOR_YEAR,
};

const BAND_QUANTILES: [f64; 3] = [0.05, 0.5, 0.95];

/// A data stock that training datasets are projected against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Domain {
    LanguageLow,
    LanguageHigh,
    Vision,
}

impl Domain {
    pub const ALL: [Domain; 3] = [Domain::LanguageLow, Domain::LanguageHigh, Domain::Vision];

    pub fn name(&self) -> &'static str {
        match self {
            Domain::LanguageLow => "language-low",
            Domain::LanguageHigh => "language-high",
            Domain::Vision => "vision",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Domain::LanguageLow => "Low-quality language stock",
            Domain::LanguageHigh => "High-quality language stock",
            Domain::Vision => "Vision stock",
        }
    }

    pub fn unit(&self) -> Unit {
        match self {
            Domain::Vision => Unit::Images,
            _ => Unit::Words,
        }
    }

    fn trend<'a>(&self, c: &'a RunConfig) -> &'a TrendParams {
        match self {
            Domain::Vision => &c.trends.vision,
            _ => &c.trends.language,
        }
    }

    fn anchor<'a>(&self, c: &'a RunConfig) -> &'a ScalingAnchor {
        match self {
            Domain::Vision => &c.anchors.vision,
            _ => &c.anchors.language,
        }
    }

    /// Both language stocks are compared against the same dataset projection.
    fn projection_stream(&self) -> &'static str {
        match self {
            Domain::Vision => "vision",
            _ => "language",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Domain::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown domain {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProjectionKind {
    Historical,
    Compute,
}

impl ProjectionKind {
    pub const ALL: [ProjectionKind; 2] = [ProjectionKind::Historical, ProjectionKind::Compute];

    pub fn name(&self) -> &'static str {
        match self {
            ProjectionKind::Historical => "historical",
            ProjectionKind::Compute => "compute",
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProjectionKind::Historical => "Historical projection",
            ProjectionKind::Compute => "Compute projection",
        }
    }
}

/// One projection of one domain.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionRun {
    pub kind: ProjectionKind,
    pub projection: TrajectorySet,
    pub constrained: TrajectorySet,
    pub exhaustion: ExhaustionResult,
    pub histogram: ExhaustionHistogram,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainRun {
    pub domain: Domain,
    /// The stock over the projection window.
    pub stock: TrajectorySet,
    pub projections: Vec<ProjectionRun>,
}

impl DomainRun {
    pub fn projection(&self, kind: ProjectionKind) -> &ProjectionRun {
        self.projections
            .iter()
            .find(|p| p.kind == kind)
            .expect("both projections are always run")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StockSet {
    pub models: Vec<(StockModelSpec, TrajectorySet)>,
    pub aggregate: TrajectorySet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HighQuality {
    pub components: HqComponents,
    pub stock: TrajectorySet,
    pub compositions: Vec<(String, ClassShares)>,
}

/// Everything a full run computes.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResults {
    pub penetration: SigmoidFit,
    pub users: AnnualCurves,
    pub reddit: GrowthComparison,
    pub language: StockSet,
    pub vision: StockSet,
    pub high_quality: HighQuality,
    pub domains: Vec<DomainRun>,
}

impl RunResults {
    pub fn domain(&self, d: Domain) -> &DomainRun {
        self.domains
            .iter()
            .find(|r| r.domain == d)
            .expect("all domains are always run")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub seed: u64,
    pub trials: usize,
    pub config_sha256: String,
    /// Canonical TOML of the configuration that produced the bundle.
    pub config: String,
    pub inputs: BTreeMap<String, String>,
    pub artifacts: BTreeMap<String, String>,
}

pub const MANIFEST_FILE: &str = "manifest.json";

/// Rendered artifacts keyed by file name, plus the manifest describing them.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub tables: Vec<Table>,
    pub charts: Vec<(String, Chart)>,
    pub files: BTreeMap<String, Vec<u8>>,
    pub manifest: Manifest,
}

impl ReportBundle {
    fn assemble(
        ctx: &Context,
        tables: Vec<Table>,
        charts: Vec<(String, Chart)>,
    ) -> Result<Self> {
        let mut files = BTreeMap::new();
        for t in &tables {
            files.insert(format!("{}.csv", t.name), t.to_csv()?.into_bytes());
            files.insert(format!("{}.md", t.name), t.to_markdown()?.into_bytes());
        }
        for (name, c) in &charts {
            files.insert(format!("{name}.svg"), render_svg(c)?.into_bytes());
        }
        let artifacts = files
            .iter()
            .map(|(k, v)| (k.clone(), hex::encode(Sha256::digest(v))))
            .collect();
        let manifest = Manifest {
            seed: ctx.config.seed,
            trials: ctx.config.trials,
            config_sha256: ctx.config.hash()?,
            config: ctx.config.to_toml()?,
            inputs: ctx.inputs.digests.clone(),
            artifacts,
        };
        let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Config(e.to_string()))?;
        files.insert(MANIFEST_FILE.to_string(), (json + "\n").into_bytes());
        Ok(Self {
            tables,
            charts,
            files,
            manifest,
        })
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// The same bundle restricted to charts (and the manifest).
    pub fn charts_only(mut self) -> Self {
        self.files
            .retain(|k, _| k.ends_with(".svg") || k == MANIFEST_FILE);
        self.tables.clear();
        self
    }

    /// Writes every file into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        self.files
            .iter()
            .map(|(name, bytes)| {
                let p = dir.join(name);
                std::fs::write(&p, bytes).map_err(|e| Error::io(&p, e))?;
                Ok(p)
            })
            .collect()
    }
}

/// Inputs and demography shared by every stage.
struct Context {
    config: RunConfig,
    inputs: Inputs,
    penetration: SigmoidFit,
    demography: Demography,
}

impl Context {
    fn new(config: &RunConfig) -> Result<Self> {
        config.validate().stage("config")?;
        let inputs = load_inputs(&config.inputs).stage("inputs")?;
        let penetration = fit_sigmoid(&inputs.penetration).stage("penetration fit")?;
        let model = InternetUsersModel::new(inputs.population.clone(), penetration.params);
        let demography = Demography::new(&model, config.grid).stage("demographics")?;
        Ok(Self {
            config: config.clone(),
            inputs,
            penetration,
            demography,
        })
    }

    fn seed(&self, label: &str) -> u64 {
        SeedStream::new(self.config.seed).fork(label).seed_for(0)
    }

    fn window(&self) -> Result<YearGrid> {
        YearGrid::new(ANCHOR_YEAR, self.config.grid.end())
    }

    fn stock_set(&self, specs: Vec<StockModelSpec>, weights: &[f64], label: &str) -> Result<StockSet> {
        let c = &self.config;
        let models = specs
            .into_iter()
            .map(|s| Ok((s, stock_trajectory(&s, c.grid, c.trials, c.seed, &self.demography)?)))
            .collect::<Result<Vec<_>>>()?;
        let sets: Vec<TrajectorySet> = models.iter().map(|m| m.1.clone()).collect();
        let aggregate = aggregate_stock(&sets, weights, self.seed(label))?;
        Ok(StockSet { models, aggregate })
    }

    fn language(&self) -> Result<StockSet> {
        let c = &self.config;
        self.stock_set(language_models(&c.priors.language), &c.weights.language, "language")
            .stage("language stock")
    }

    fn vision(&self) -> Result<StockSet> {
        let c = &self.config;
        self.stock_set(vision_models(&c.priors.vision), &c.weights.vision, "vision")
            .stage("vision stock")
    }

    fn high_quality(&self) -> Result<HighQuality> {
        let c = &self.config;
        let p = &c.priors.high_quality;
        let run = || {
            Ok(HighQuality {
                components: hq_components(p, c.trials, c.seed)?,
                stock: hq_total_stock(p, c.grid, c.trials, c.seed)?,
                compositions: c
                    .compositions
                    .iter()
                    .map(|d| Ok((d.name.clone(), classify_composition(d)?)))
                    .collect::<Result<_>>()?,
            })
        };
        run().stage("high-quality stock")
    }

    fn projection(&self, domain: Domain, kind: ProjectionKind) -> Result<TrajectorySet> {
        let c = &self.config;
        let seed = self.seed(domain.projection_stream());
        let window = self.window()?;
        match kind {
            ProjectionKind::Historical => {
                historical_projection(domain.trend(c), window, c.trials, seed, domain.unit())
            }
            ProjectionKind::Compute => compute_optimal_projection(
                &self.inputs.compute,
                Some(domain.anchor(c)),
                window,
                c.trials,
                seed,
                domain.unit(),
            ),
        }
        .stage("projection")
    }

    fn domain_run(&self, domain: Domain, stock: &TrajectorySet) -> Result<DomainRun> {
        let window = self.window()?;
        let stock = stock.slice(window.start(), window.end())?;
        let projections = ProjectionKind::ALL
            .into_iter()
            .map(|kind| {
                let projection = self.projection(domain, kind)?;
                let run = || {
                    let constrained = constrain_projection(&projection, &stock)?;
                    let exhaustion = exhaustion_distribution(&projection, &stock)?;
                    let histogram = exhaustion_probability_by_year(&exhaustion, window)?;
                    Ok(ProjectionRun {
                        kind,
                        projection: projection.clone(),
                        constrained,
                        exhaustion,
                        histogram,
                    })
                };
                run().stage("exhaustion")
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DomainRun {
            domain,
            stock,
            projections,
        })
    }

    fn reddit(&self) -> Result<GrowthComparison> {
        compare_growth_models(&self.inputs.reddit).stage("reddit growth")
    }
}

/// Computes every stock, projection and exhaustion distribution.
pub fn run_results(config: &RunConfig) -> Result<RunResults> {
    let ctx = Context::new(config)?;
    results(&ctx)
}

fn results(ctx: &Context) -> Result<RunResults> {
    let language = ctx.language()?;
    let vision = ctx.vision()?;
    let high_quality = ctx.high_quality()?;
    let domains = vec![
        ctx.domain_run(Domain::LanguageLow, &language.aggregate)?,
        ctx.domain_run(Domain::LanguageHigh, &high_quality.stock)?,
        ctx.domain_run(Domain::Vision, &vision.aggregate)?,
    ];
    Ok(RunResults {
        penetration: ctx.penetration,
        users: ctx.demography.curves().clone(),
        reddit: ctx.reddit()?,
        language,
        vision,
        high_quality,
        domains,
    })
}

/// Full run: all tables and figures.
pub fn run_pipeline(config: &RunConfig) -> Result<ReportBundle> {
    let ctx = Context::new(config)?;
    let r = results(&ctx)?;
    let report = || -> Result<_> {
        let tables = vec![
            trends_table(&ctx.config)?,
            stock_table("language_stock", &r.language)?,
            hq_table(&r.high_quality)?,
            composition_table(&r.high_quality),
            stock_table("vision_stock", &r.vision)?,
            exhaustion_table(&r.domains),
            penetration_table(&ctx),
            reddit_table(&r.reddit),
        ];
        let mut charts = vec![
            ("fig_internet_users".to_string(), users_chart(&r.users)),
            ("fig_penetration".to_string(), penetration_chart(&ctx)),
            ("fig_language_models".to_string(), models_chart("Language stock models", &r.language)?),
            ("fig_language_aggregate".to_string(), aggregate_chart("Aggregated language stock", &r.language.aggregate)?),
            ("fig_hq_stock".to_string(), aggregate_chart("High-quality language stock", &r.high_quality.stock)?),
            ("fig_vision_models".to_string(), models_chart("Vision stock models", &r.vision)?),
            ("fig_vision_aggregate".to_string(), aggregate_chart("Aggregated vision stock", &r.vision.aggregate)?),
            ("fig_exhaustion".to_string(), exhaustion_chart(&r.domains)),
        ];
        for d in &r.domains {
            charts.push((format!("fig_projection_{}", d.domain.name().replace('-', "_")), projection_chart(d)?));
        }
        charts.extend(reddit_charts(&ctx.inputs, &r.reddit));
        Ok((tables, charts))
    };
    let (tables, charts) = report().stage("report")?;
    ReportBundle::assemble(&ctx, tables, charts).stage("report")
}

/// Penetration fit and internet users only.
pub fn penetration_report(config: &RunConfig) -> Result<ReportBundle> {
    let ctx = Context::new(config)?;
    let tables = vec![penetration_table(&ctx)];
    let charts = vec![
        ("fig_penetration".to_string(), penetration_chart(&ctx)),
        ("fig_internet_users".to_string(), users_chart(ctx.demography.curves())),
    ];
    ReportBundle::assemble(&ctx, tables, charts).stage("report")
}

/// Stock models and aggregate of one domain.
pub fn stock_report(config: &RunConfig, domain: Domain) -> Result<ReportBundle> {
    let ctx = Context::new(config)?;
    let report = || -> Result<_> {
        Ok(match domain {
            Domain::LanguageLow => {
                let s = ctx.language()?;
                (
                    vec![stock_table("language_stock", &s)?],
                    vec![
                        ("fig_language_models".into(), models_chart("Language stock models", &s)?),
                        ("fig_language_aggregate".into(), aggregate_chart("Aggregated language stock", &s.aggregate)?),
                    ],
                )
            }
            Domain::LanguageHigh => {
                let h = ctx.high_quality()?;
                (
                    vec![hq_table(&h)?, composition_table(&h)],
                    vec![("fig_hq_stock".into(), aggregate_chart("High-quality language stock", &h.stock)?)],
                )
            }
            Domain::Vision => {
                let s = ctx.vision()?;
                (
                    vec![stock_table("vision_stock", &s)?],
                    vec![
                        ("fig_vision_models".into(), models_chart("Vision stock models", &s)?),
                        ("fig_vision_aggregate".into(), aggregate_chart("Aggregated vision stock", &s.aggregate)?),
                    ],
                )
            }
        })
    };
    let (tables, charts) = report()?;
    ReportBundle::assemble(&ctx, tables, charts).stage("report")
}

fn domain_only(ctx: &Context, domain: Domain) -> Result<DomainRun> {
    let stock = match domain {
        Domain::LanguageLow => ctx.language()?.aggregate,
        Domain::LanguageHigh => ctx.high_quality()?.stock,
        Domain::Vision => ctx.vision()?.aggregate,
    };
    ctx.domain_run(domain, &stock)
}

/// Dataset projections of one domain, unconstrained and constrained.
pub fn projection_report(config: &RunConfig, domain: Domain) -> Result<ReportBundle> {
    let ctx = Context::new(config)?;
    let run = domain_only(&ctx, domain)?;
    let report = || -> Result<_> {
        let tables = vec![projection_table(&run)?];
        let charts = vec![(format!("fig_projection_{}", domain.name().replace('-', "_")), projection_chart(&run)?)];
        Ok((tables, charts))
    };
    let (tables, charts) = report().stage("report")?;
    ReportBundle::assemble(&ctx, tables, charts).stage("report")
}

/// Exhaustion dates of one domain under both projections.
pub fn exhaustion_report(config: &RunConfig, domain: Domain) -> Result<ReportBundle> {
    let ctx = Context::new(config)?;
    let run = domain_only(&ctx, domain)?;
    let runs = [run];
    let tables = vec![exhaustion_table(&runs)];
    let charts = vec![("fig_exhaustion".to_string(), exhaustion_chart(&runs))];
    ReportBundle::assemble(&ctx, tables, charts).stage("report")
}

fn summary_cells(s: &SampleSet) -> Vec<Cell> {
    let [lo, mid, hi] = s.summary();
    vec![Cell::Num(mid), Cell::Num(lo), Cell::Num(hi)]
}

fn trends_table(c: &RunConfig) -> Result<Table> {
    let mut t = Table::new(
        "table_trends",
        &["domain", "doubling_months_median", "doubling_months_q05", "doubling_months_q95", "largest_dataset"],
    );
    for (name, trend) in [("Language", &c.trends.language), ("Vision", &c.trends.vision)] {
        let ci = doubling_time_ci(trend)?;
        t.push(vec![
            name.into(),
            Cell::Num(ci.median()),
            Cell::Num(ci.low()),
            Cell::Num(ci.high()),
            Cell::Num(trend.start_size),
        ]);
    }
    Ok(t)
}

const STOCK_HEADER: [&str; 7] = [
    "model",
    "stock_median",
    "stock_q05",
    "stock_q95",
    "growth_median",
    "growth_q05",
    "growth_q95",
];

fn stock_row(label: &str, t: &TrajectorySet, is_static: bool) -> Result<Vec<Cell>> {
    let mut row = vec![Cell::from(label)];
    row.extend(summary_cells(&t.at_year(ANCHOR_YEAR)?));
    if is_static {
        row.extend([Cell::Missing, Cell::Missing, Cell::Missing]);
    } else {
        row.extend(summary_cells(&growth_rate(t, ANCHOR_YEAR)?));
    }
    Ok(row)
}

fn stock_table(name: &str, s: &StockSet) -> Result<Table> {
    let mut t = Table::new(name, &STOCK_HEADER);
    for (spec, traj) in &s.models {
        t.push(stock_row(spec.label(), traj, spec.is_static())?);
    }
    t.push(stock_row("Aggregated model", &s.aggregate, false)?);
    Ok(t)
}

fn hq_table(h: &HighQuality) -> Result<Table> {
    let mut t = Table::new("table_hq_stock", &["component", "median", "q05", "q95"]);
    let c = &h.components;
    for (label, s) in [
        ("Code", &c.code_words),
        ("Scientific papers", &c.paper_words),
        ("Books", &c.book_words),
        ("Share of high-quality corpus", &c.component_fraction),
        ("Yearly growth", &c.economy_growth),
    ] {
        let mut row = vec![Cell::from(label)];
        row.extend(summary_cells(s));
        t.push(row);
    }
    let mut row = vec![Cell::from("Total stock")];
    row.extend(summary_cells(&h.stock.at_year(ANCHOR_YEAR)?));
    t.push(row);
    Ok(t)
}

fn composition_table(h: &HighQuality) -> Table {
    let mut t = Table::new("table_hq_composition", &["dataset", "dedicated_contributor", "professional", "classified"]);
    for (name, s) in &h.compositions {
        t.push(vec![
            name.as_str().into(),
            Cell::Num(s.contributor),
            Cell::Num(s.professional),
            Cell::Num(s.total()),
        ]);
    }
    t
}

fn exhaustion_table(runs: &[DomainRun]) -> Table {
    let mut t = Table::new(
        "table_exhaustion",
        &["stock", "projection", "median", "q05", "q95", "censored", "trials"],
    );
    for d in runs {
        for p in &d.projections {
            let e = &p.exhaustion;
            let q = match e.quantiles {
                Some([lo, mid, hi]) => vec![Cell::Year(mid), Cell::Year(lo), Cell::Year(hi)],
                None => vec![Cell::Missing; 3],
            };
            let mut row = vec![d.domain.label().into(), p.kind.label().into()];
            row.extend(q);
            row.extend([Cell::Count(e.censored_count), Cell::Count(e.trials())]);
            t.push(row);
        }
    }
    t
}

fn projection_table(d: &DomainRun) -> Result<Table> {
    let mut t = Table::new(
        &format!("table_projection_{}", d.domain.name().replace('-', "_")),
        &[
            "year",
            "stock_median",
            "historical_median",
            "historical_constrained_median",
            "compute_median",
            "compute_constrained_median",
        ],
    );
    let median = |s: &TrajectorySet| crate::mc::trajectory_quantiles(s, 0.5);
    let h = d.projection(ProjectionKind::Historical);
    let c = d.projection(ProjectionKind::Compute);
    let cols = [
        median(&d.stock)?,
        median(&h.projection)?,
        median(&h.constrained)?,
        median(&c.projection)?,
        median(&c.constrained)?,
    ];
    for j in 0..cols[0].len() {
        let mut row = vec![Cell::Count(cols[0][j].0 as usize)];
        row.extend(cols.iter().map(|col| Cell::Num(col[j].1)));
        t.push(row);
    }
    Ok(t)
}

fn penetration_table(ctx: &Context) -> Table {
    let p = &ctx.penetration.params;
    let mut t = Table::new(
        "table_penetration_fit",
        &["ceiling", "midpoint", "steepness", "residual_norm", "fraction_2018", "fraction_2022"],
    );
    t.push(vec![
        Cell::Num(p.ceiling),
        Cell::Year(p.midpoint),
        Cell::Num(p.steepness),
        Cell::Num(ctx.penetration.residual_norm),
        Cell::Num(p.fraction(2018.0)),
        Cell::Num(p.fraction(2022.0)),
    ]);
    t
}

fn reddit_table(g: &GrowthComparison) -> Table {
    let mut t = Table::new(
        "table_reddit_growth",
        &["rank", "family", "holdout_rmse", "train_log_rmse"],
    );
    for (k, f) in g.ranking.iter().enumerate() {
        t.push(vec![
            Cell::Count(k + 1),
            f.family.name().into(),
            Cell::Num(f.holdout_rmse),
            Cell::Num(f.train_log_rmse),
        ]);
    }
    t
}

fn band(label: &str, t: &TrajectorySet) -> Result<Band> {
    Ok(Band {
        label: label.to_string(),
        points: trajectory_quantile_bands(t, &BAND_QUANTILES)?
            .into_iter()
            .map(|(y, q)| (f64::from(y), [q[0], q[1], q[2]]))
            .collect(),
    })
}

fn y_label(u: Unit) -> &'static str {
    match u {
        Unit::Images => "images",
        _ => "words",
    }
}

fn models_chart(title: &str, s: &StockSet) -> Result<Chart> {
    let mut c = Chart::new(title, "year", y_label(s.aggregate.unit()), Scale::Log);
    for (spec, t) in &s.models {
        c.bands.push(band(spec.label(), t)?);
    }
    Ok(c)
}

fn aggregate_chart(title: &str, t: &TrajectorySet) -> Result<Chart> {
    let mut c = Chart::new(title, "year", y_label(t.unit()), Scale::Log);
    c.bands.push(band("stock", t)?);
    Ok(c)
}

fn projection_chart(d: &DomainRun) -> Result<Chart> {
    let mut c = Chart::new(d.domain.label(), "year", y_label(d.domain.unit()), Scale::Log);
    c.bands.push(band("stock", &d.stock)?);
    for p in &d.projections {
        c.bands.push(band(p.kind.label(), &p.constrained)?);
    }
    Ok(c)
}

fn exhaustion_chart(runs: &[DomainRun]) -> Chart {
    let mut c = Chart::new("Exhaustion year", "year", "probability", Scale::Linear);
    for d in runs {
        for p in &d.projections {
            c.lines.push(Series {
                label: format!("{} {}", d.domain.name(), p.kind.name()),
                points: p.histogram.bins.iter().map(|(y, v)| (f64::from(*y), *v)).collect(),
            });
        }
    }
    c
}

fn users_chart(u: &AnnualCurves) -> Chart {
    let mut c = Chart::new("World population and internet users", "year", "persons", Scale::Linear);
    let years: Vec<f64> = u.grid.years().map(f64::from).collect();
    for (label, v) in [("population", &u.population), ("internet users", &u.internet_users)] {
        c.lines.push(Series {
            label: label.into(),
            points: years.iter().copied().zip(v.iter().copied()).collect(),
        });
    }
    c
}

fn penetration_chart(ctx: &Context) -> Chart {
    let p = &ctx.penetration.params;
    let mut c = Chart::new("Internet penetration", "year", "fraction online", Scale::Linear);
    c.lines.push(Series {
        label: "fitted sigmoid".into(),
        points: ctx.config.grid.years().map(|y| (f64::from(y), p.fraction(f64::from(y)))).collect(),
    });
    c.points.push(Series {
        label: "observed".into(),
        points: ctx.inputs.penetration.clone(),
    });
    c
}

fn reddit_charts(inputs: &Inputs, g: &GrowthComparison) -> Vec<(String, Chart)> {
    [("fig_reddit_linear", Scale::Linear), ("fig_reddit_log", Scale::Log)]
        .into_iter()
        .map(|(name, scale)| {
            let mut c = Chart::new("Monthly Reddit submissions", "year", "submissions", scale);
            for family in GrowthFamily::ALL {
                c.lines.push(Series {
                    label: family.name().into(),
                    points: inputs
                        .reddit
                        .iter()
                        .map(|(m, _)| (m.decimal_year(), g.predict(family, *m)))
                        .collect(),
                });
            }
            c.points.push(Series {
                label: "observed".into(),
                points: inputs.reddit.iter().map(|(m, v)| (m.decimal_year(), *v)).collect(),
            });
            (name.to_string(), c)
        })
        .collect()
}
