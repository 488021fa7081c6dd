use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] semi_hilbert::Error),
    #[error("rank {rank} is not in 0..={n}")]
    BadRank { rank: usize, n: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("worked example mismatch in {quantity}: expected {expected}, got {actual}")]
    ReproMismatch { quantity: String, expected: f64, actual: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
