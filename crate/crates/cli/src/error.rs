use thiserror::Error;

/// Input errors; all of them exit with status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] knotdimer_core::Error),
    #[error("Io: {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("Usage: {0}")]
    Usage(String),
}
