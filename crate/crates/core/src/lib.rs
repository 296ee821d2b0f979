//! Monte Carlo forecasts of the stock of public language and vision data and
//! of the year the largest training datasets catch up with it.
//!
//! Start from [`pipeline::run_pipeline`] for a full report, or use the
//! modules directly: [`mc`] for interval priors and trajectories,
//! [`demographics`] and [`stock`] for data stocks, [`hq`] for the
//! high-quality language stock, and [`projection`] for dataset projections
//! and exhaustion dates.

pub mod config;
pub mod demographics;
pub mod error;
pub mod fit;
pub mod hq;
pub mod io;
pub mod mc;
pub mod pipeline;
pub mod projection;
pub mod report;
pub mod stock;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use pipeline::{run_pipeline, Domain, ReportBundle};
