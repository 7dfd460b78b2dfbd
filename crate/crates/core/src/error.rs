use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },

    #[error("node ids are not contiguous 0..{n}: {detail}")]
    NonContiguousIds { n: usize, detail: String },

    #[error("ragged feature rows: node {node} has {got} values, expected {expected}")]
    RaggedFeatures { node: usize, got: usize, expected: usize },

    #[error("label {label} of node {node} outside [0, {n_classes})")]
    LabelOutOfRange { node: usize, label: i64, n_classes: usize },

    #[error("edge set is empty")]
    EmptyEdgeSet,

    #[error("missing {0}")]
    MissingFile(&'static str),

    #[error("metadata inconsistent with data: {0}")]
    MetaMismatch(String),

    #[error("split ratios must sum to 1 (got {0})")]
    InvalidRatios(f64),

    #[error("split count must be at least 1")]
    ZeroSplitCount,

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("isolated node at index {0}")]
    IsolatedNode(usize),

    #[error("invalid gamma for {kind}: {msg}")]
    InvalidGamma { kind: String, msg: String },

    #[error("unknown operator kind '{0}'")]
    UnknownOperator(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dense eigensolver cap exceeded: n = {n} > {cap}")]
    EigenCapExceeded { n: usize, cap: usize },

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("graph is bipartite")]
    Bipartite,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("zero signal")]
    ZeroSignal,

    #[error("operator {0} is not a Laplacian-family kind")]
    NotLaplacian(String),

    #[error("loss must be a 1x1 tensor, got {rows}x{cols}")]
    NonScalarLoss { rows: usize, cols: usize },

    #[error("dropout probability must lie in [0, 1), got {0}")]
    InvalidDropout(f64),

    #[error("non-finite gradient in parameter '{0}'")]
    NonFiniteGradient(String),

    #[error("non-finite loss at epoch {epoch}: {value}")]
    NonFiniteLoss { epoch: usize, value: f64 },

    #[error("invalid model spec: {0}")]
    InvalidSpec(String),

    #[error("invalid embedding request: {0}")]
    InvalidEmbedding(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Stable machine-readable identifier, used by the CLI error line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::NonContiguousIds { .. } => "non_contiguous_ids",
            Error::RaggedFeatures { .. } => "ragged_features",
            Error::LabelOutOfRange { .. } => "label_out_of_range",
            Error::EmptyEdgeSet => "empty_edge_set",
            Error::MissingFile(_) => "missing_file",
            Error::MetaMismatch(_) => "meta_mismatch",
            Error::InvalidRatios(_) => "invalid_ratios",
            Error::ZeroSplitCount => "zero_split_count",
            Error::InvalidSplit(_) => "invalid_split",
            Error::IsolatedNode(_) => "isolated_node",
            Error::InvalidGamma { .. } => "invalid_gamma",
            Error::UnknownOperator(_) => "unknown_operator",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::EigenCapExceeded { .. } => "eigen_cap_exceeded",
            Error::NoConvergence(_) => "no_convergence",
            Error::Bipartite => "bipartite",
            Error::Disconnected => "disconnected",
            Error::ZeroSignal => "zero_signal",
            Error::NotLaplacian(_) => "not_laplacian",
            Error::NonScalarLoss { .. } => "non_scalar_loss",
            Error::InvalidDropout(_) => "invalid_dropout",
            Error::NonFiniteGradient(_) => "non_finite_gradient",
            Error::NonFiniteLoss { .. } => "non_finite_loss",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::InvalidEmbedding(_) => "invalid_embedding",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Json(_) => "json",
        }
    }
}
