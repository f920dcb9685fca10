use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("bad magic: expected {expected:?}")]
    BadMagic { expected: &'static str },

    #[error("file truncated: {0}")]
    Truncated(&'static str),

    #[error("{0} trailing bytes after payload")]
    TrailingBytes(usize),

    #[error("declared length {declared} does not match {actual}")]
    LengthMismatch { declared: u64, actual: u64 },

    #[error("unknown payload mode byte {0:#04x}")]
    UnknownMode(u8),

    #[error("unknown key variant {0}")]
    UnknownVariant(u8),

    #[error("value {value} at index {index} is out of range")]
    ValueOutOfRange { index: usize, value: f64 },

    #[error("key file line {line}: {message}")]
    KeyFile { line: usize, message: String },

    #[error("PGM: {0}")]
    Pgm(String),

    #[error(transparent)]
    Key(#[from] cnnc_core::Error),
}
