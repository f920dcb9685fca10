//! The chaotic tent map driving the cipher, and the bit taken from each state.

use crate::error::{Error, Result};

/// Smallest accepted control parameter.
pub const R_MIN: f64 = 1.9;
/// Control parameters must stay strictly below this value.
pub const R_MAX: f64 = 2.0;

/// One iteration of the tent map with control parameter `r`.
///
/// Fails if `x` is not strictly inside the unit interval.
pub fn tent_step(x: f64, r: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(x));
    }
    Ok(tent(x, r))
}

/// Unchecked iteration, for states already known to be in (0, 1).
#[inline]
pub(crate) fn tent(x: f64, r: f64) -> f64 {
    if x <= 0.5 {
        r * x
    } else {
        r * (1.0 - x)
    }
}

/// The 4th bit of the binary fractional expansion of `x` (1-indexed), i.e.
/// `floor(x * 16) mod 2`.
pub fn extract_bit(x: f64) -> Result<u8> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(x));
    }
    Ok(bit4(x))
}

#[inline]
pub(crate) fn bit4(x: f64) -> u8 {
    ((x * 16.0).floor() as u32 & 1) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_branch_boundary() {
        assert_eq!(tent_step(0.5, 1.99).unwrap(), 0.995);
    }

    #[test]
    fn first_branch() {
        assert!((tent_step(0.41, 1.99).unwrap() - 0.8159).abs() < 1e-12);
    }

    #[test]
    fn second_branch() {
        assert!((tent_step(0.75, 1.99).unwrap() - 0.4975).abs() < 1e-12);
    }

    #[test]
    fn rejects_states_outside_unit_interval() {
        for x in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(tent_step(x, 1.99).is_err(), "{x}");
            assert!(extract_bit(x).is_err(), "{x}");
        }
    }

    #[test]
    fn fourth_fractional_bit() {
        assert_eq!(extract_bit(0.0625).unwrap(), 1);
        assert_eq!(extract_bit(0.5).unwrap(), 0);
        assert_eq!(extract_bit(0.8159).unwrap(), 1);
        // 0.1001 in binary
        assert_eq!(extract_bit(0.5625).unwrap(), 1);
        assert_eq!(extract_bit(0.0624).unwrap(), 0);
    }

    #[test]
    fn stays_in_unit_interval_for_a_long_run() {
        let mut x = 0.41;
        for _ in 0..1_000_000 {
            x = tent_step(x, 1.99).unwrap();
        }
        assert!(x > 0.0 && x < 1.0);
    }
}
