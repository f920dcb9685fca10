//! Shared inputs for the criterion benches.

use cnnc_core::SecretKey;

pub fn paper_key() -> SecretKey {
    SecretKey::new(1.99, 0.41, "+-+-+-+-".parse().unwrap()).unwrap()
}

/// Deterministic pseudo-image of `len` bytes.
pub fn test_image(len: usize) -> Vec<u8> {
    (0..len)
        .map(|i| {
            let (x, y) = (i % 256, i / 256);
            ((x * 3 + y * 5) ^ ((x * y) >> 4)) as u8
        })
        .collect()
}
