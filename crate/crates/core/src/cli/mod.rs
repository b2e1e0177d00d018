//! Scenario-file front end: configuration, sweeps and tabular output.

mod config;
mod schema;
mod table;

pub use config::*;
pub use schema::SCHEMA;
pub use table::{
    echoed_config, emit_table, parse_csv_rows, run_sweep, Format, ResultTable, Row, COLUMNS, HBAR,
    SPEED_OF_LIGHT,
};

use thiserror::Error;

use crate::error::Error as ForceError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Config { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Force(#[from] ForceError),

    #[error("unknown check \"{name}\"; available checks: {available}")]
    UnknownCheck { name: String, available: String },

    #[error("{0} row(s) did not converge")]
    NotConverged(usize),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// Process exit status: 1 for bad input, 2 for numerical failure,
    /// 3 for broken internal invariants.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::Parse(_) | CliError::UnknownCheck { .. } | CliError::Io(_) => 1,
            CliError::Force(e) => match e {
                ForceError::Singular(_) | ForceError::NonFinite(_) => 2,
                _ => 1,
            },
            CliError::NotConverged(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}
