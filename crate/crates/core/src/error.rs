use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the supported range.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Inputs whose sizes, degrees or weights do not fit together.
    #[error("shape mismatch: {0}")]
    Mismatch(String),

    /// A request for a d2 component that does not exist.
    #[error("no d2 component from {source_label} to {target}")]
    UnlistedSummand {
        source_label: String,
        target: String,
    },

    /// A brute-force routine refused to run past its size cap.
    #[error("size cap exceeded: {size} > {cap}")]
    CapExceeded { size: usize, cap: usize },

    /// An internal consistency check failed; indicates a bug in the model.
    #[error("model inconsistency: {0}")]
    Model(String),

    /// A structural claim about a reduction stage did not hold.
    #[error("stage {stage}: check '{claim}' failed: {detail}")]
    StageCheck {
        stage: String,
        claim: String,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
