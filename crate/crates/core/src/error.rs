use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no edges")]
    NoEdges,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("no seed genes could be mapped onto the graph ({dropped} dropped)")]
    NoMappableSeeds { dropped: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not connected: {unreachable} node(s) unreachable from the seed set")]
    Disconnected { unreachable: usize },

    #[error("degenerate feature: column `{column}` is constant ({value})")]
    DegenerateFeature { column: String, value: f64 },

    #[error("degenerate similarity: all feature vectors are identical")]
    DegenerateSimilarity,

    #[error("propagation did not converge within {iterations} iterations (last step norm {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("class `{0}` has no training samples")]
    MissingClass(String),

    #[error("class `{class}` has {count} sample(s); at least 2 are required")]
    TooFewSamples { class: String, count: usize },

    #[error("training diverged at epoch {epoch} (loss is not finite); try a smaller learning rate")]
    Diverged { epoch: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no extended-only genes: the extended seed list adds nothing beyond the curated one")]
    NoExtendedOnly,

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// Short machine-readable tag, used by the CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NoEdges => "no_edges",
            Error::Parse { .. } => "parse",
            Error::NoMappableSeeds { .. } => "no_mappable_seeds",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Disconnected { .. } => "disconnected",
            Error::DegenerateFeature { .. } => "degenerate_feature",
            Error::DegenerateSimilarity => "degenerate_similarity",
            Error::NotConverged { .. } => "not_converged",
            Error::MissingClass(_) => "missing_class",
            Error::TooFewSamples { .. } => "too_few_samples",
            Error::Diverged { .. } => "diverged",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NoExtendedOnly => "no_extended_only",
            Error::Io { .. } => "io",
            Error::Json { .. } => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
