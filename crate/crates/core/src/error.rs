use std::path::PathBuf;

use crate::mc::Unit;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("unit mismatch: expected {expected}, found {found}")]
    UnitMismatch { expected: Unit, found: Unit },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("fit failed after {iterations} iterations (best sse {best_sse:.6e}, params {best_params:?})")]
    FitFailure {
        iterations: usize,
        best_sse: f64,
        best_params: Vec<f64>,
    },

    #[error("empty interval: {from} > {to}")]
    EmptyInterval { from: i32, to: i32 },

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("growth undefined: zero stock in trial {trial} at {year}")]
    UndefinedGrowth { trial: usize, year: i32 },

    #[error("aggregation error: {0}")]
    Aggregation(String),

    #[error("unknown dataset component {0:?}")]
    Classification(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{file}: parse error on line {line}: {message}")]
    Parse {
        file: String,
        line: u64,
        message: String,
    },

    #[error("{file}: {message}")]
    Validation { file: String, message: String },

    #[error("chart error: {0}")]
    Chart(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("[{stage}] {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Name of the pipeline stage that raised this error, if tagged.
    pub fn stage(&self) -> Option<&'static str> {
        match self {
            Error::Stage { stage, .. } => Some(stage),
            _ => None,
        }
    }
}

/// Attaches a pipeline stage name to errors.
pub trait StageContext<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageContext<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })
    }
}
