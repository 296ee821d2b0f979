use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use datastock::pipeline::{exhaustion_report, penetration_report, projection_report, stock_report};
use datastock::{run_pipeline, Domain, Error, ReportBundle, Result, RunConfig};

#[derive(Parser)]
#[command(version, about = "Forecast the stock of public data and when training datasets exhaust it")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit the internet penetration sigmoid and write the internet-user curves.
    FitPenetration(Common),
    /// Estimate the data stock of one domain.
    Stock(WithDomain),
    /// Project the largest training dataset against one domain's stock.
    Project(WithDomain),
    /// Exhaustion-year distributions for one domain.
    Exhaustion(WithDomain),
    /// Every table and figure, plus a manifest.
    ReproducePaper(Common),
    /// Every figure only.
    Plot(Common),
}

#[derive(Args)]
struct Common {
    /// TOML configuration, or a manifest.json from an earlier run.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Output directory (default: the configured `out`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WithDomain {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "language-low", value_parser = ["language-low", "language-high", "vision"])]
    domain: String,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(t) = self.trials {
            c.trials = t;
        }
        if let Some(o) = &self.out {
            c.out = o.clone();
        }
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<(PathBuf, ReportBundle)> {
    let domain = |d: &WithDomain| d.domain.parse::<Domain>();
    let (config, bundle) = match &cli.command {
        Command::FitPenetration(c) => {
            let config = c.config()?;
            let b = penetration_report(&config)?;
            (config, b)
        }
        Command::Stock(d) => {
            let config = d.common.config()?;
            let b = stock_report(&config, domain(d)?)?;
            (config, b)
        }
        Command::Project(d) => {
            let config = d.common.config()?;
            let b = projection_report(&config, domain(d)?)?;
            (config, b)
        }
        Command::Exhaustion(d) => {
            let config = d.common.config()?;
            let b = exhaustion_report(&config, domain(d)?)?;
            (config, b)
        }
        Command::ReproducePaper(c) => {
            let config = c.config()?;
            let b = run_pipeline(&config)?;
            (config, b)
        }
        Command::Plot(c) => {
            let config = c.config()?;
            let b = run_pipeline(&config)?.charts_only();
            (config, b)
        }
    };
    bundle
        .write_to(&config.out)
        .map_err(|e| Error::Stage { stage: "write", source: Box::new(e) })?;
    Ok((config.out, bundle))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, bundle)) => {
            for t in &bundle.tables {
                println!("{}", t.name);
                print!("{}", t.to_markdown().unwrap_or_default());
                println!();
            }
            println!("wrote {} files to {}", bundle.files.len(), out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
