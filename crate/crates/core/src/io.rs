//! Loading and validating the CSV input tables.
//!
//! Each table has a fixed header. A file may omit the header line, in which
//! case every line is data. Years (or months) must be strictly increasing;
//! duplicates and out-of-order rows are rejected rather than repaired.

use std::collections::BTreeMap;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::config::InputPaths;
use crate::demographics::{MonthStamp, PopulationTable};
use crate::error::{Error, Result};
use crate::projection::{ComputeRow, ComputeTrajectory};

pub const POPULATION_CSV: &str = include_str!("../data/population.csv");
pub const PENETRATION_CSV: &str = include_str!("../data/penetration.csv");
pub const REDDIT_CSV: &str = include_str!("../data/reddit.csv");
pub const COMPUTE_CSV: &str = include_str!("../data/compute.csv");

pub const POPULATION_HEADER: &[&str] = &["year", "population"];
pub const PENETRATION_HEADER: &[&str] = &["year", "fraction"];
pub const REDDIT_HEADER: &[&str] = &["month", "submissions"];
pub const COMPUTE_HEADER: &[&str] = &["year", "flop_q05", "flop_q50", "flop_q95"];

#[derive(Debug, Clone, PartialEq)]
pub struct Inputs {
    pub population: PopulationTable,
    /// `(year, fraction of population online)`.
    pub penetration: Vec<(f64, f64)>,
    pub reddit: Vec<(MonthStamp, f64)>,
    pub compute: ComputeTrajectory,
    /// SHA-256 of each input's bytes, keyed by table name.
    pub digests: BTreeMap<String, String>,
}

struct Record<'a> {
    line: u64,
    fields: Vec<&'a str>,
}

fn records<'a>(text: &'a str, file: &str, header: &[&str]) -> Result<Vec<Record<'a>>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k as u64 + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').map(str::trim).collect();
        if out.is_empty() && line == 1 && fields[0].parse::<f64>().is_err() && !fields[0].contains('-') {
            if fields != header {
                return Err(Error::Parse {
                    file: file.into(),
                    line,
                    message: format!("expected header `{}`", header.join(",")),
                });
            }
            continue;
        }
        if fields.len() != header.len() {
            return Err(Error::Parse {
                file: file.into(),
                line,
                message: format!("expected {} fields, found {}", header.len(), fields.len()),
            });
        }
        out.push(Record { line, fields });
    }
    if out.is_empty() {
        return Err(Error::EmptyInput("input table"));
    }
    Ok(out)
}

fn field<T: std::str::FromStr>(file: &str, r: &Record, k: usize, what: &str) -> Result<T> {
    r.fields[k].parse().map_err(|_| Error::Parse {
        file: file.into(),
        line: r.line,
        message: format!("invalid {what} `{}`", r.fields[k]),
    })
}

fn check_increasing<K: PartialOrd + std::fmt::Display>(file: &str, keys: &[K]) -> Result<()> {
    match keys.windows(2).find(|w| w[0] >= w[1]) {
        Some(w) => Err(Error::Validation {
            file: file.into(),
            message: if w[0] == w[1] {
                format!("duplicate key {}", w[0])
            } else {
                format!("keys not increasing: {} then {}", w[0], w[1])
            },
        }),
        None => Ok(()),
    }
}

pub fn parse_population(text: &str, file: &str) -> Result<PopulationTable> {
    let rows = records(text, file, POPULATION_HEADER)?
        .iter()
        .map(|r| Ok((field::<i32>(file, r, 0, "year")?, field::<f64>(file, r, 1, "population")?)))
        .collect::<Result<Vec<_>>>()?;
    check_increasing(file, &rows.iter().map(|r| r.0).collect::<Vec<_>>())?;
    PopulationTable::new(rows).map_err(|e| Error::Validation {
        file: file.into(),
        message: e.to_string(),
    })
}

pub fn parse_penetration(text: &str, file: &str) -> Result<Vec<(f64, f64)>> {
    let rows = records(text, file, PENETRATION_HEADER)?
        .iter()
        .map(|r| Ok((field::<f64>(file, r, 0, "year")?, field::<f64>(file, r, 1, "fraction")?)))
        .collect::<Result<Vec<_>>>()?;
    check_increasing(file, &rows.iter().map(|r| r.0).collect::<Vec<_>>())?;
    if let Some(r) = rows.iter().find(|r| !(0.0..=1.0).contains(&r.1)) {
        return Err(Error::Validation {
            file: file.into(),
            message: format!("fraction {} in {} outside [0, 1]", r.1, r.0),
        });
    }
    Ok(rows)
}

pub fn parse_reddit(text: &str, file: &str) -> Result<Vec<(MonthStamp, f64)>> {
    let rows = records(text, file, REDDIT_HEADER)?
        .iter()
        .map(|r| {
            Ok((
                field::<MonthStamp>(file, r, 0, "month")?,
                field::<f64>(file, r, 1, "submission count")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    check_increasing(file, &rows.iter().map(|r| r.0).collect::<Vec<_>>())?;
    if let Some(r) = rows.iter().find(|r| !(r.1.is_finite() && r.1 >= 0.0)) {
        return Err(Error::Validation {
            file: file.into(),
            message: format!("negative count in {}", r.0),
        });
    }
    Ok(rows)
}

pub fn parse_compute(text: &str, file: &str) -> Result<ComputeTrajectory> {
    let rows = records(text, file, COMPUTE_HEADER)?
        .iter()
        .map(|r| {
            Ok(ComputeRow {
                year: field(file, r, 0, "year")?,
                flop_q05: field(file, r, 1, "FLOP")?,
                flop_q50: field(file, r, 2, "FLOP")?,
                flop_q95: field(file, r, 3, "FLOP")?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_increasing(file, &rows.iter().map(|r| r.year).collect::<Vec<_>>())?;
    ComputeTrajectory::new(rows).map_err(|e| match e {
        Error::Validation { message, .. } => Error::Validation {
            file: file.into(),
            message,
        },
        e => e,
    })
}

fn read(name: &str, path: Option<&Path>, bundled: &'static str) -> Result<(String, String, String)> {
    let (label, text) = match path {
        Some(p) => (
            p.display().to_string(),
            std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?,
        ),
        None => (format!("{name}.csv"), bundled.to_string()),
    };
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok((label, text, digest))
}

/// Reads every input table, falling back to the bundled copy for any path
/// left unset.
pub fn load_inputs(paths: &InputPaths) -> Result<Inputs> {
    let mut digests = BTreeMap::new();
    let mut take = |name: &str, path, bundled| {
        let (label, text, digest) = read(name, path, bundled)?;
        digests.insert(name.to_string(), digest);
        Ok::<_, Error>((label, text))
    };
    let (f, t) = take("population", paths.population.as_deref(), POPULATION_CSV)?;
    let population = parse_population(&t, &f)?;
    let (f, t) = take("penetration", paths.penetration.as_deref(), PENETRATION_CSV)?;
    let penetration = parse_penetration(&t, &f)?;
    let (f, t) = take("reddit", paths.reddit.as_deref(), REDDIT_CSV)?;
    let reddit = parse_reddit(&t, &f)?;
    let (f, t) = take("compute", paths.compute.as_deref(), COMPUTE_CSV)?;
    let compute = parse_compute(&t, &f)?;
    Ok(Inputs {
        population,
        penetration,
        reddit,
        compute,
        digests,
    })
}
