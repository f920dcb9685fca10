use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("tent-map state {0} is outside (0, 1)")]
    Domain(f64),

    /// A value that should have been an integer was too far from one.
    /// Usually means the ciphertext was produced under a different key
    /// or at a different stream position.
    #[error("rounding residual {residual:e} exceeds tolerance (value {value})")]
    Residual { value: f64, residual: f64 },

    #[error("degenerate difference {0}: ciphertexts must come from distinct plain-bytes")]
    DegenerateDelta(i64),

    #[error("bytes {0:#04x} and {1:#04x} are not bitwise complements")]
    NotComplement(u8, u8),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("ciphertext has {needed} values but the equivalent key covers only {available}")]
    KeyTooShort { needed: usize, available: usize },

    #[error("at position {index}: {source}")]
    AtPosition {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, index: usize) -> Self {
        Error::AtPosition {
            index,
            source: Box::new(self),
        }
    }
}
