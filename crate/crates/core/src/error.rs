use crate::geometry::SpaceError;
use crate::kernel::{KernelError, SeriesError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("degree must be at least 1, got {0}")]
    Degree(u32),
    #[error("degree {d} needs {needed} residue variables, at most {max} supported")]
    DegreeTooLarge { d: u32, needed: usize, max: usize },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("{0} is not a Calabi-Yau threefold")]
    NotCalabiYauThreefold(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
