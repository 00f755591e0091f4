//! Library side of the `waring` binary: file formats, configuration and the
//! command implementations. `main.rs` only parses flags and prints.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub mod bfile;
pub mod commands;
pub mod config;
pub mod sievefile;

pub use commands::Report;
pub use config::Config;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Core(#[from] waring_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use waring_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(E::MemoryCap { .. }) => EXIT_RESOURCE,
            CliError::Core(E::InvalidArgument(_) | E::NotFound(_) | E::Precondition(_)) => EXIT_USAGE,
            _ => EXIT_MISMATCH,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
