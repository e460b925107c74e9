use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate interval [{x_min}, {x_max}]")]
    DegenerateInterval { x_min: f64, x_max: f64 },

    #[error("grid size {0} must be a power of two and at least 4")]
    NotPowerOfTwo(usize),

    #[error("packet width must be positive, got {0}")]
    InvalidWidth(f64),

    #[error("spinor weights are all zero")]
    ZeroSpinor,

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("tabulated coefficient has {found} nodes, grid has {expected}")]
    TabulationMismatch { expected: usize, found: usize },

    #[error("window [{lo}, {hi}] is not inside the domain")]
    InvalidWindow { lo: f64, hi: f64 },

    #[error("invalid evolution setting: {0}")]
    InvalidEvolution(String),

    #[error("unsupported potential: {0}")]
    UnsupportedPotential(String),

    #[error("transform is not invertible at node {node} (|det| = {det:e})")]
    NonInvertible { node: usize, det: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("snapshot schedules differ: {0}")]
    ScheduleMismatch(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error(transparent)]
    Config(#[from] crate::cli::ConfigError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
