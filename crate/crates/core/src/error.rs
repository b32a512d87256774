//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by field operations, configuration and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Array shape does not match the grid or the peer operand.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Two fields that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Configuration file or override could not be interpreted.
    #[error("config error: {0}")]
    Config(String),

    /// A field became non-finite during time integration.
    #[error("numerical blow-up at t = {t}: {what}")]
    BlowUp { t: f64, what: String },

    /// Checkpoint or observation file is malformed.
    #[error("corrupt file: {0}")]
    CorruptFile(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
