//! Error taxonomy shared by the library and the CLI.
//!
//! The CLI maps [`Error::exit_code`]: validation problems (bad input data)
//! exit 2, violated algorithm preconditions exit 3.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("affine map is singular")]
    SingularMap,

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("no slice at the requested level: {0}")]
    NoSuchSlice(String),

    #[error("degenerate configuration: {0}")]
    DegenerateFace(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// CLI exit code: 2 for input/validation problems, 3 for violated
    /// algorithm preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGeometry(_)
            | Error::SingularMap
            | Error::BadParameter(_)
            | Error::Io(_)
            | Error::Parse(_) => 2,
            Error::NoSuchSlice(_) | Error::DegenerateFace(_) | Error::PreconditionViolated(_) => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
