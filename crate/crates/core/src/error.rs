use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pellet ({burrow}, {trench}, {pellet}) has color {color} which is not a slot of the {wheel} wheel")]
    OffWheel {
        burrow: usize,
        trench: usize,
        pellet: usize,
        color: String,
        wheel: &'static str,
    },

    #[error("malformed {kind} at line {line}: {msg}")]
    Parse {
        kind: &'static str,
        line: usize,
        msg: String,
    },

    #[error("malformed image file: {0}")]
    MalformedImage(String),

    #[error("sweep failed at sigma index {sigma_index}, image {image_index}: {source}")]
    Sweep {
        sigma_index: usize,
        image_index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
