use std::path::PathBuf;

use crate::features::FeatureId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid logistic-map parameter: {0}")]
    InvalidChaosParam(String),

    #[error("feature {feature} is undefined{}", window.map(|w| format!(" on window {w}")).unwrap_or_default())]
    FeatureUndefined {
        window: Option<usize>,
        feature: FeatureId,
    },

    #[error("feature {0} listed more than once")]
    DuplicateFeature(FeatureId),

    #[error("unknown feature `{0}`")]
    UnknownFeature(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular value decomposition did not converge")]
    SvdFailure,

    #[error("label {label} outside 1..={class_count}")]
    LabelOutOfRange { label: usize, class_count: usize },

    #[error("feature set mismatch: model expects {expected:?}, got {actual:?}")]
    FeatureSetMismatch {
        expected: Vec<FeatureId>,
        actual: Vec<FeatureId>,
    },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("input vector is constant")]
    ConstantInput,

    #[error("signal of length {len} is shorter than window length {window_len}")]
    SignalTooShort { len: usize, window_len: usize },

    #[error("class {0} has fewer than 3 windows")]
    TooFewWindows(usize),

    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid manifest: {0}")]
    InvalidManifest(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
