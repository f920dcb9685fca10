//! Ciphertext container.
//!
//! ```text
//! "CNNC1"
//! mode: u8              0 = raw bytes, 1 = PGM pixels
//! [width: u32 LE, height: u32 LE]   PGM mode only
//! count: u64 LE
//! count × f64 LE        each in [0, 1)
//! ```

use crate::error::FormatError;
use crate::wire::{check_count, Reader};

pub const MAGIC: &str = "CNNC1";

const MODE_RAW: u8 = 0;
const MODE_PGM: u8 = 1;

/// What the plaintext was, so decryption can restore it in the same form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PayloadMode {
    Raw,
    Pgm { width: u32, height: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CipherFile {
    pub mode: PayloadMode,
    pub values: Vec<f64>,
}

impl CipherFile {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(MAGIC.len() + 17 + 8 * self.values.len());
        out.extend_from_slice(MAGIC.as_bytes());
        match self.mode {
            PayloadMode::Raw => out.push(MODE_RAW),
            PayloadMode::Pgm { width, height } => {
                out.push(MODE_PGM);
                out.extend_from_slice(&width.to_le_bytes());
                out.extend_from_slice(&height.to_le_bytes());
            }
        }
        out.extend_from_slice(&(self.values.len() as u64).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(buf: &[u8]) -> Result<Self, FormatError> {
        let mut r = Reader::new(buf);
        r.expect_magic(MAGIC)?;
        let mode = match r.u8("mode")? {
            MODE_RAW => PayloadMode::Raw,
            MODE_PGM => PayloadMode::Pgm {
                width: r.u32("width")?,
                height: r.u32("height")?,
            },
            other => return Err(FormatError::UnknownMode(other)),
        };
        let declared = r.u64("length")?;
        let n = check_count(declared, 8, r.remaining())?;
        if let PayloadMode::Pgm { width, height } = mode {
            let pixels = u64::from(width) * u64::from(height);
            if pixels != declared {
                return Err(FormatError::LengthMismatch {
                    declared: pixels,
                    actual: declared,
                });
            }
        }
        let mut values = Vec::with_capacity(n);
        for index in 0..n {
            let value = r.f64("values")?;
            if !(0.0..1.0).contains(&value) {
                return Err(FormatError::ValueOutOfRange { index, value });
            }
            values.push(value);
        }
        r.finish()?;
        Ok(CipherFile { mode, values })
    }
}
