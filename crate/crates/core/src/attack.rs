//! Chosen-plaintext break of the cipher.
//!
//! Given ciphertexts of a plaintext `f1` and of its bitwise complement `f2`,
//! every position yields an integer difference `delta = 256 * (c_hi - c_lo)`.
//! Because the two masked bytes are complements, `y - !y = delta` pins the
//! masked byte `y` down uniquely, which reveals the XOR mask up to the choice
//! of which ciphertext came from the larger masked byte. The two resulting
//! candidates differ only in bit 7 and, together with the matching additive
//! term, decrypt identically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{round_checked, wrap};

/// Which of the two mask candidates a key holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    One = 1,
    Two = 2,
}

impl Variant {
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            1 => Some(Variant::One),
            2 => Some(Variant::Two),
            _ => None,
        }
    }
}

/// XOR mask and equivalent additive state (in `[0, 256)`) for one position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentKeyRecord {
    pub b: u8,
    pub x_hat: f64,
}

/// Positional replacement for the secret key, valid for the stream positions
/// the chosen pair covered.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalentKey {
    pub variant: Variant,
    pub records: Vec<EquivalentKeyRecord>,
}

impl EquivalentKey {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Observed integer difference between two ciphertext values at one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delta {
    /// In `1..=255`.
    pub value: u8,
    /// True when the second ciphertext was the larger one.
    pub swapped: bool,
}

/// The complementary plaintext `f2[i] = f1[i] ^ 0xff`.
pub fn make_chosen_pair(f1: &[u8]) -> Vec<u8> {
    f1.iter().map(|&b| !b).collect()
}

/// `round(256 * (c_hi - c_lo))` where `c_hi` is the larger of the two.
pub fn extract_delta(c1: f64, c2: f64) -> Result<Delta> {
    let swapped = c1 < c2;
    let (hi, lo) = if swapped { (c2, c1) } else { (c1, c2) };
    let d = round_checked(256.0 * (hi - lo))?;
    if d <= 0 || d >= 256 {
        return Err(Error::DegenerateDelta(d));
    }
    Ok(Delta {
        value: d as u8,
        swapped,
    })
}

/// The unique 8-bit `x` with `(a ^ x) - (!a ^ x) = c`, namely
/// `a ^ (1, c7, .., c1)`.
///
/// Only odd `c` admit a solution; for even `c` the returned value does not
/// satisfy the equation. `c` must be non-zero.
pub fn solve_xor_diff(a: u8, c: u8) -> u8 {
    debug_assert!(c > 0);
    a ^ (0x80 | (c >> 1))
}

/// The two XOR-mask candidates at one position.
///
/// The first solves `(a ^ B) - (!a ^ B) = delta` with `a` the plain-byte whose
/// ciphertext was larger; the second solves the wrapped case with
/// `256 - delta`. They always differ by exactly `0x80`.
pub fn derive_b_candidates(f1_byte: u8, f2_byte: u8, delta: Delta) -> Result<(u8, u8)> {
    if f2_byte != !f1_byte {
        return Err(Error::NotComplement(f1_byte, f2_byte));
    }
    if delta.value == 0 {
        return Err(Error::DegenerateDelta(0));
    }
    let a = if delta.swapped { f2_byte } else { f1_byte };
    let b1 = solve_xor_diff(a, delta.value);
    let b2 = solve_xor_diff(!a, (256 - u16::from(delta.value)) as u8);
    Ok((b1, b2))
}

/// `(256 * c - (f ^ B)) mod 256`: congruent to `256 * x_last` when `B` is the
/// true mask.
pub fn derive_equiv_state(f_byte: u8, c: f64, b: u8) -> f64 {
    wrap(256.0 * c - f64::from(f_byte ^ b), 256.0)
}

/// Both candidate equivalent keys from a chosen complementary pair and their
/// ciphertexts under the same secret key.
pub fn derive_equivalent_key(
    f1: &[u8],
    c1: &[f64],
    f2: &[u8],
    c2: &[f64],
) -> Result<(EquivalentKey, EquivalentKey)> {
    let n = f1.len();
    if c1.len() != n || f2.len() != n || c2.len() != n {
        return Err(Error::LengthMismatch(format!(
            "plain1={}, cipher1={}, plain2={}, cipher2={}",
            n,
            c1.len(),
            f2.len(),
            c2.len()
        )));
    }

    let mut k1 = Vec::with_capacity(n);
    let mut k2 = Vec::with_capacity(n);
    for i in 0..n {
        let (r1, r2) = derive_position(f1[i], c1[i], f2[i], c2[i]).map_err(|e| e.at(i))?;
        k1.push(r1);
        k2.push(r2);
    }
    Ok((
        EquivalentKey {
            variant: Variant::One,
            records: k1,
        },
        EquivalentKey {
            variant: Variant::Two,
            records: k2,
        },
    ))
}

fn derive_position(
    f1: u8,
    c1: f64,
    f2: u8,
    c2: f64,
) -> Result<(EquivalentKeyRecord, EquivalentKeyRecord)> {
    if f2 != !f1 {
        return Err(Error::NotComplement(f1, f2));
    }
    let delta = extract_delta(c1, c2)?;
    let (b1, b2) = derive_b_candidates(f1, f2, delta)?;
    Ok((
        EquivalentKeyRecord {
            b: b1,
            x_hat: derive_equiv_state(f1, c1, b1),
        },
        EquivalentKeyRecord {
            b: b2,
            x_hat: derive_equiv_state(f1, c1, b2),
        },
    ))
}

/// `((f ^ B) + x_hat) mod 256 / 256` at each position.
pub fn encrypt_with_equivalent(plaintext: &[u8], key: &EquivalentKey) -> Result<Vec<f64>> {
    check_coverage(plaintext.len(), key)?;
    Ok(plaintext
        .iter()
        .zip(&key.records)
        .map(|(&f, k)| wrap(f64::from(f ^ k.b) + k.x_hat, 256.0) / 256.0)
        .collect())
}

/// `round((256 * c - x_hat) mod 256) ^ B` at each position.
///
/// The ciphertext must start at the same stream position as the chosen pair
/// and be no longer than the key.
pub fn decrypt_with_equivalent(ciphertext: &[f64], key: &EquivalentKey) -> Result<Vec<u8>> {
    check_coverage(ciphertext.len(), key)?;
    ciphertext
        .iter()
        .zip(&key.records)
        .enumerate()
        .map(|(i, (&c, k))| {
            let n = round_checked(wrap(256.0 * c - k.x_hat, 256.0)).map_err(|e| e.at(i))?;
            Ok((n.rem_euclid(256) as u8) ^ k.b)
        })
        .collect()
}

fn check_coverage(len: usize, key: &EquivalentKey) -> Result<()> {
    if len > key.records.len() {
        return Err(Error::KeyTooShort {
            needed: len,
            available: key.records.len(),
        });
    }
    Ok(())
}
