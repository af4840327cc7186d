//! Survey driver for modular link volumes: per-field rows, CSV files, the
//! volume/length fit and the one-word families.

pub use modlink_core as core;

pub mod pipeline;
pub mod table;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] modlink_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("CSV header does not match the survey schema")]
    Header,
    #[error("line {line}: bad value {value:?} in column {column}")]
    Value { line: u64, column: &'static str, value: String },
    #[error("thread pool: {0}")]
    Threads(String),
}

pub type Result<T> = std::result::Result<T, Error>;
