use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("dense pseudo-product limited to n <= {max}, got n = {n}")]
    DenseTooLarge { n: usize, max: usize },
    #[error("frequency pair lies on the singular set: {0}")]
    SingularInput(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("fixed-point iteration failed: {0}")]
    Divergence(String),
    #[error("numerical blow-up at t = {t}: {what}")]
    BlowUp { t: f64, what: String },
    #[error("checkpoint format: {0}")]
    Format(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
