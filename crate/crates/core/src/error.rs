use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid qubit targets: {0}")]
    Targets(String),
    #[error("operator is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("Kraus operators are not complete (residual {0:.3e})")]
    Incomplete(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("degenerate Bell state: all coefficients vanish")]
    DegenerateBellState,
    #[error("invalid curve: {0}")]
    Curve(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
