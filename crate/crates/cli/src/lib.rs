//! Driver for `graphcx-core`: a checksummed on-disk cache, text formats,
//! a parallel computation engine and the battery of structural checks.

use std::path::PathBuf;

pub mod cache;
pub mod engine;
pub mod formats;
pub mod theorems;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] graphcx_core::Error),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
    #[error("{}: {message}", path.display())]
    CorruptEntry { path: PathBuf, message: String },
}

impl Error {
    /// Process exit status: 2 for bad input, 3 for resource limits and I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(graphcx_core::Error::Budget { .. }) => 3,
            Error::Core(_) => 2,
            Error::Cache(_) | Error::CorruptEntry { .. } => 3,
        }
    }
}
