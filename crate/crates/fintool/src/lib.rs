// SPDX-License-Identifier: Apache-2.0

//! File formats, plots and the `fintool` command line on top of
//! `fintool-core`.

use std::path::PathBuf;

use fintool_core::ModelError;

pub mod cli;
pub mod config;
pub mod figures;
pub mod output;
pub mod svg;

pub use config::{load_profiles, parse_profiles, ConfigError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(ModelError),
    #[error("cannot write {}: {source}", path.display())]
    Output { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// 1 for model infeasibility, 2 for everything the user has to fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Model(e) if e.is_infeasible() => 1,
            _ => 2,
        }
    }
}
