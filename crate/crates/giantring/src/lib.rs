//! Parameter sweeps, figure presets, file output and the command-line
//! front end for `giantring-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod fit;
pub mod plot;
pub mod preset;
pub mod sweep;
pub mod verify;

pub use error::{AppError, Result};
