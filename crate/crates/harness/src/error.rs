use std::path::PathBuf;

use pnmcts_core::search::ConfigError;
use pnmcts_core::{GameError, SearchError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{}, row {row}: {message}", path.display())]
    Malformed { path: PathBuf, row: usize, message: String },
    #[error("unknown game `{0}` (expected loa7, loa8, awari, knightthrough or tree:<file>)")]
    UnknownGame(String),
    #[error("a series needs an even number of games, got {0}")]
    OddSeries(usize),
    #[error("{0}")]
    Invalid(String),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> HarnessError {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> HarnessError {
        HarnessError::Csv {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
