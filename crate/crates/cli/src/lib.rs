//! File formats and subcommands behind the `cnnc` binary.

pub mod cipherfile;
pub mod commands;
pub mod equivfile;
pub mod error;
pub mod keyfile;
pub mod pgm;
mod wire;

pub use cipherfile::{CipherFile, PayloadMode};
pub use commands::Format;
pub use error::FormatError;
pub use pgm::ImageBuffer;
