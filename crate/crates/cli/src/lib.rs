//! Library side of the `lepage` command: configuration files, grid
//! evaluation of the solution field and the verification battery.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod field;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("config key `{key}`: {msg}")]
    Key { key: String, msg: String },

    #[error(transparent)]
    Core(#[from] lepage_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("image output: {0}")]
    Image(#[from] image::ImageError),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn key_error(key: &str, msg: impl Into<String>) -> CliError {
    CliError::Key {
        key: key.to_string(),
        msg: msg.into(),
    }
}
