use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("initial data `{expr}` is not periodic along axis {axis}; set allow_aperiodic to override")]
    Aperiodic { expr: String, axis: usize },
    #[error("evaluation failed at node {node}: {source}")]
    Node {
        node: usize,
        #[source]
        source: liftlab_core::Error,
    },
    #[error(transparent)]
    Symbolic(#[from] liftlab_core::Error),
    #[error("non-finite value after step {step}")]
    NonFinite { step: usize },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl SimError {
    /// Process exit code: 2 for configuration problems, 3 for numerical aborts.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::NonFinite { .. } | SimError::Node { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, SimError>;
