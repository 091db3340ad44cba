use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A value could not be constructed (bad qubit count, bad weights, ...).
    #[error("construction error: {0}")]
    Construction(String),
    /// An argument violated an operation precondition.
    #[error("argument error: {0}")]
    Argument(String),
    /// The quantum state cannot support the requested operation.
    #[error("state error: {0}")]
    State(String),
    /// The model admits no negative receiver energy (xi^2 + eta^2 = 0 or eta = 0).
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
    /// The request exceeds what dense simulation supports.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A protocol configuration is inconsistent.
    #[error("configuration error: {0}")]
    Configuration(String),
    /// A party touched a site it does not own.
    #[error("LOCC violation: {0}")]
    Locc(String),
    /// A level set has no points.
    #[error("empty set: {0}")]
    EmptySet(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
