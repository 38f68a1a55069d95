//! Command-line front end and experiment drivers for `hbb-core`.
//!
//! Experiments write CSV tables (the canonical output) into an output
//! directory; SVG plots are rendered from those tables on request.

pub mod config;
pub mod experiments;
pub mod plot;
pub mod solve;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{ExperimentConfig, ExperimentId, InstanceSource};
pub use experiments::run_experiment;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hbb_core::Error),

    #[error("{0}")]
    Input(String),

    #[error("cannot access {path}: {source}")]
    File { path: PathBuf, source: std::io::Error },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("plot rendering failed: {0}")]
    Plot(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// Process exit code: 2 for bad input, 3 for a refused budget, 4 for a
    /// numerical failure.
    pub fn exit_code(&self) -> i32 {
        use hbb_core::Error as E;
        match self {
            CliError::Core(E::BudgetRefused(_)) => 3,
            CliError::Core(E::Numerical(_) | E::Unbounded { .. }) => 4,
            CliError::Plot(_) => 4,
            _ => 2,
        }
    }
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write_file(path: &std::path::Path, contents: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::File {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}
