//! Run configuration, read from TOML.
//!
//! Every field has a default, so an empty file is a valid configuration,
//! and a file only needs the keys it changes.
//! Prior overrides are nested as `priors.<domain>.<model>.<parameter>`;
//! unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hq::{default_compositions, DatasetComposition, HqPriors};
use crate::mc::YearGrid;
use crate::projection::{ScalingAnchor, TrendParams};
use crate::stock::{LanguagePriors, VisionPriors};

pub const DEFAULT_SEED: u64 = 2022;
pub const DEFAULT_TRIALS: usize = 10_000;

/// The default configuration, as shipped in `data/default.toml`.
pub const DEFAULT_TOML: &str = include_str!("../data/default.toml");

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Priors {
    pub language: LanguagePriors,
    pub vision: VisionPriors,
    pub high_quality: HqPriors,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Trends {
    pub language: TrendParams,
    pub vision: TrendParams,
}

impl Default for Trends {
    fn default() -> Self {
        Self {
            language: TrendParams::language(),
            vision: TrendParams::vision(),
        }
    }
}

/// Mixture weights, one per model in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Weights {
    /// recorded speech, internet users, popular platforms, CommonCrawl, indexed web
    pub language: Vec<f64>,
    /// popular platforms, external estimate
    pub vision: Vec<f64>,
}

impl Default for Weights {
    fn default() -> Self {
        Self {
            language: vec![1.0; 5],
            vision: vec![1.0; 2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Anchors {
    pub language: ScalingAnchor,
    pub vision: ScalingAnchor,
}

impl Default for Anchors {
    fn default() -> Self {
        Self {
            language: ScalingAnchor::chinchilla(),
            // Largest vision dataset trained at the 2022 median compute.
            vision: ScalingAnchor {
                compute_flop: 1.1749e24,
                dataset_size: 3e9,
            },
        }
    }
}

/// Input tables. A missing path selects the bundled table.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InputPaths {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub population: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub penetration: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reddit: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compute: Option<PathBuf>,
}

impl InputPaths {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, Option<&Path>)> {
        [
            ("population", self.population.as_deref()),
            ("penetration", self.penetration.as_deref()),
            ("reddit", self.reddit.as_deref()),
            ("compute", self.compute.as_deref()),
        ]
        .into_iter()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub grid: YearGrid,
    pub out: PathBuf,
    pub weights: Weights,
    pub inputs: InputPaths,
    pub trends: Trends,
    pub anchors: Anchors,
    pub priors: Priors,
    pub compositions: Vec<DatasetComposition>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            grid: YearGrid::default(),
            out: PathBuf::from("report"),
            weights: Weights::default(),
            inputs: InputPaths::default(),
            trends: Trends::default(),
            anchors: Anchors::default(),
            priors: Priors::default(),
            compositions: default_compositions(),
        }
    }
}

fn overlay(base: &mut toml::Table, top: toml::Table) {
    for (k, v) in top {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(t)) => overlay(b, t),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config = Self::parse(text)?;
        config.validate()?;
        Ok(config)
    }

    // Overlays `text` on the shipped defaults so that a partial table such
    // as `[trends.language]` with only `doubling_months` keeps the other
    // fields of that domain. Arrays replace wholesale.
    fn parse(text: &str) -> Result<Self> {
        let err = |e: toml::de::Error| Error::Config(e.to_string());
        let mut base: toml::Table = toml::from_str(DEFAULT_TOML).map_err(err)?;
        overlay(&mut base, toml::from_str(text).map_err(err)?);
        toml::Value::Table(base).try_into().map_err(err)
    }

    /// Reads a TOML file, or the configuration embedded in a run manifest
    /// when the path ends in `.json`. Relative input paths resolve against
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = if path.extension().is_some_and(|e| e == "json") {
            let manifest: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
            let embedded = manifest["config"]
                .as_str()
                .ok_or_else(|| Error::Config(format!("{} has no embedded config", path.display())))?;
            Self::parse(embedded)?
        } else {
            Self::parse(&text)?
        };
        if let Some(dir) = path.parent() {
            for p in [
                &mut config.inputs.population,
                &mut config.inputs.penetration,
                &mut config.inputs.reddit,
                &mut config.inputs.compute,
            ]
            .into_iter()
            .flatten()
            {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// SHA-256 of the canonical TOML form.
    pub fn hash(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.to_toml()?.as_bytes())))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        for year in [crate::stock::ANCHOR_YEAR, self.trends.language.start_year, self.trends.vision.start_year] {
            if !self.grid.contains(year) {
                return bad(format!("grid {}..={} must contain {year}", self.grid.start(), self.grid.end()));
            }
        }
        for (name, w, n) in [
            ("language", &self.weights.language, 5),
            ("vision", &self.weights.vision, 2),
        ] {
            if w.len() != n {
                return bad(format!("weights.{name} needs {n} entries, got {}", w.len()));
            }
        }
        self.trends.language.validate()?;
        self.trends.vision.validate()?;
        self.anchors.language.validate()?;
        self.anchors.vision.validate()?;
        self.priors.high_quality.validate()?;
        for spec in crate::stock::language_models(&self.priors.language)
            .iter()
            .chain(&crate::stock::vision_models(&self.priors.vision))
        {
            spec.validate()?;
        }
        for (name, path) in self.inputs.iter() {
            if let Some(p) = path {
                if !p.is_file() {
                    return bad(format!("inputs.{name}: {} does not exist", p.display()));
                }
            }
        }
        Ok(())
    }
}
