use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// The request exceeds a configured size cap or qubit budget.
    #[error("budget refused: {0}")]
    BudgetRefused(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A quantity diverges, e.g. a vanishing spectral gap in a ratio.
    #[error("unbounded: {what} at s = {s}")]
    Unbounded { what: String, s: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
