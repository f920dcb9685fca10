//! Equivalent-key container.
//!
//! ```text
//! "EQKY1"
//! variant: u8           1 or 2
//! count: u64 LE
//! count × (B: u8, x_hat: f64 LE)    x_hat in [0, 256)
//! ```

use cnnc_core::{EquivalentKey, EquivalentKeyRecord, Variant};

use crate::error::FormatError;
use crate::wire::{check_count, Reader};

pub const MAGIC: &str = "EQKY1";
const RECORD_SIZE: usize = 9;

pub fn to_bytes(key: &EquivalentKey) -> Vec<u8> {
    let mut out = Vec::with_capacity(MAGIC.len() + 9 + RECORD_SIZE * key.len());
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(key.variant.as_u8());
    out.extend_from_slice(&(key.len() as u64).to_le_bytes());
    for rec in &key.records {
        out.push(rec.b);
        out.extend_from_slice(&rec.x_hat.to_le_bytes());
    }
    out
}

pub fn from_bytes(buf: &[u8]) -> Result<EquivalentKey, FormatError> {
    let mut r = Reader::new(buf);
    r.expect_magic(MAGIC)?;
    let v = r.u8("variant")?;
    let variant = Variant::from_u8(v).ok_or(FormatError::UnknownVariant(v))?;
    let declared = r.u64("length")?;
    let n = check_count(declared, RECORD_SIZE, r.remaining())?;
    let mut records = Vec::with_capacity(n);
    for index in 0..n {
        let b = r.u8("record")?;
        let x_hat = r.f64("record")?;
        if !(0.0..256.0).contains(&x_hat) {
            return Err(FormatError::ValueOutOfRange {
                index,
                value: x_hat,
            });
        }
        records.push(EquivalentKeyRecord { b, x_hat });
    }
    r.finish()?;
    Ok(EquivalentKey { variant, records })
}
