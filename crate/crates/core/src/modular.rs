//! Floating-point modular helpers shared by the cipher and the attack.
//!
//! Every place where the algebra promises an integer is computed in binary64,
//! rounded to the nearest integer and rejected if the rounding residual
//! exceeds [`RESIDUAL_TOLERANCE`].

use crate::error::{Error, Result};

/// Largest accepted distance between a value and the integer it should be.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Floored modulus `value mod modulus` for positive `modulus`, always in
/// `[0, modulus)`.
///
/// `f64::rem_euclid` can return `modulus` itself when a tiny negative value
/// rounds up; that case is folded back to zero.
pub fn wrap(value: f64, modulus: f64) -> f64 {
    debug_assert!(modulus > 0.0);
    let r = value.rem_euclid(modulus);
    if r >= modulus {
        0.0
    } else {
        r
    }
}

/// Rounds to the nearest integer, returning the integer and the absolute
/// residual.
pub fn round_with_residual(value: f64) -> (i64, f64) {
    let n = value.round();
    (n as i64, (value - n).abs())
}

/// Rounds to the nearest integer, failing with [`Error::Residual`] when the
/// value is not within [`RESIDUAL_TOLERANCE`] of it.
pub fn round_checked(value: f64) -> Result<i64> {
    let (n, residual) = round_with_residual(value);
    if residual > RESIDUAL_TOLERANCE || !value.is_finite() {
        return Err(Error::Residual { value, residual });
    }
    Ok(n)
}

/// Distance between `a` and `b` on a circle of circumference `modulus`.
pub fn circular_distance(a: f64, b: f64, modulus: f64) -> f64 {
    let d = wrap(a - b, modulus);
    d.min(modulus - d)
}
