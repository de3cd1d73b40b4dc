use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("moment of order {order} is infinite for alpha = {alpha} (requires alpha > {})", order + 1)]
    NonFiniteMoment { order: u32, alpha: f64 },

    #[error("degenerate sample: every observation equals 1, the likelihood has no finite maximizer")]
    DegenerateSample,

    #[error("{what} did not converge (error estimate {error_estimate:e})")]
    NonConvergence { what: String, error_estimate: f64 },

    #[error("{}:{line}: {message}", path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "<input>".into()))]
    Parse {
        path: Option<PathBuf>,
        line: u64,
        message: String,
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("no chapter heading matched the pattern `{0}`")]
    PatternMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
