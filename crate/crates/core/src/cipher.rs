//! The clipped-neural-network chaotic stream cipher.
//!
//! Each plain-byte is masked twice: XOR with a byte `B` read off the network's
//! cells, then addition (mod 1) of the last of eight tent-map states. The
//! tent-map states also supply the control bits that flip weight signs, so the
//! keystream depends only on the key, never on the plaintext.

use crate::cnn::{self, Cells, WeightMatrix, CELL_COUNT};
use crate::error::{Error, Result};
use crate::modular::{round_with_residual, wrap, RESIDUAL_TOLERANCE};
use crate::tent::{bit4, tent, R_MAX, R_MIN};

/// Network rounds run before the first byte is encrypted. Each round consumes
/// eight tent-map iterations, 128 in total.
pub const WARMUP_ROUNDS: usize = 16;
/// Tent-map iterations per byte.
pub const STEPS_PER_BYTE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecretKey {
    r: f64,
    x0: f64,
    cells: Cells,
}

impl SecretKey {
    pub fn new(r: f64, x0: f64, cells: Cells) -> Result<Self> {
        if !(R_MIN..R_MAX).contains(&r) {
            return Err(Error::InvalidKey(format!(
                "r = {r} is outside [{R_MIN}, {R_MAX})"
            )));
        }
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(Error::InvalidKey(format!("x0 = {x0} is outside (0, 1)")));
        }
        Ok(SecretKey { r, x0, cells })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn cells(&self) -> Cells {
        self.cells
    }
}

/// The per-byte mask: XOR byte, additive tent-map state, and the control
/// vector that drove the weight update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeystreamElement {
    pub b: u8,
    pub x_last: f64,
    pub e_bits: Cells,
}

/// Everything observed while producing one keystream element. Used by
/// invariant checks; normal callers want [`CipherState::next_element`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepTrace {
    pub element: KeystreamElement,
    pub weighted_sums: [i8; CELL_COUNT],
    pub tent_states: [f64; STEPS_PER_BYTE],
    pub weights: WeightMatrix,
}

/// Running cipher state. A plain value: clone it to fork a keystream.
#[derive(Debug, Clone, PartialEq)]
pub struct CipherState {
    r: f64,
    x: f64,
    cells: Cells,
    weights: WeightMatrix,
    byte_index: u64,
}

impl CipherState {
    /// Runs the warm-up (16 network rounds over 128 tent iterations) starting
    /// from the key and the canonical weights.
    pub fn new(key: &SecretKey) -> Self {
        let mut state = CipherState {
            r: key.r,
            x: key.x0,
            cells: key.cells,
            weights: WeightMatrix::canonical(),
            byte_index: 0,
        };
        for _ in 0..WARMUP_ROUNDS {
            state.round();
        }
        state
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn cells(&self) -> Cells {
        self.cells
    }

    pub fn weights(&self) -> &WeightMatrix {
        &self.weights
    }

    pub fn byte_index(&self) -> u64 {
        self.byte_index
    }

    /// Evolve, iterate the tent map 8 times, extract control bits, update the
    /// weights.
    fn round(&mut self) -> StepTrace {
        let (cells, weighted_sums) = cnn::evolve(&self.cells, &self.weights);
        self.cells = cells;

        let mut tent_states = [0.0; STEPS_PER_BYTE];
        let mut control = [0i8; CELL_COUNT];
        for (x, e) in tent_states.iter_mut().zip(control.iter_mut()) {
            self.x = tent(self.x, self.r);
            debug_assert!(self.x > 0.0 && self.x < 1.0);
            *x = self.x;
            *e = 2 * bit4(self.x) as i8 - 1;
        }
        let e_bits = Cells::new(control).expect("control bits are ±1");

        let element = KeystreamElement {
            b: self.cells.to_byte(),
            x_last: self.x,
            e_bits,
        };
        self.weights.update(&self.cells, &e_bits);

        StepTrace {
            element,
            weighted_sums,
            tent_states,
            weights: self.weights,
        }
    }

    pub fn next_element(&mut self) -> KeystreamElement {
        self.next_traced().element
    }

    pub fn next_traced(&mut self) -> StepTrace {
        let trace = self.round();
        self.byte_index += 1;
        trace
    }
}

impl Iterator for CipherState {
    type Item = KeystreamElement;

    fn next(&mut self) -> Option<KeystreamElement> {
        Some(self.next_element())
    }
}

/// `((f ^ B) / 256 + x_last) mod 1`.
pub fn encrypt_byte(f: u8, b: u8, x_last: f64) -> f64 {
    let s = f64::from(f ^ b) / 256.0 + x_last;
    wrap(s, 1.0)
}

/// Inverts [`encrypt_byte`] without the residual check. Returns the byte and
/// the distance of `256 * ((c - x_last) mod 1)` from the integer it rounded to.
pub fn decode_byte(c: f64, b: u8, x_last: f64) -> (u8, f64) {
    let scaled = 256.0 * wrap(c - x_last, 1.0);
    let (n, residual) = round_with_residual(scaled);
    ((n.rem_euclid(256) as u8) ^ b, residual)
}

/// Inverts [`encrypt_byte`]. Fails if the masked value is not within the
/// residual tolerance of an integer, which means the key does not match.
pub fn decrypt_byte(c: f64, b: u8, x_last: f64) -> Result<u8> {
    let (f, residual) = decode_byte(c, b, x_last);
    if residual > RESIDUAL_TOLERANCE || !residual.is_finite() {
        return Err(Error::Residual {
            value: 256.0 * wrap(c - x_last, 1.0),
            residual,
        });
    }
    Ok(f)
}

pub fn encrypt_stream(key: &SecretKey, plaintext: &[u8]) -> Vec<f64> {
    let state = CipherState::new(key);
    plaintext
        .iter()
        .zip(state)
        .map(|(&f, k)| encrypt_byte(f, k.b, k.x_last))
        .collect()
}

/// Like [`encrypt_stream`], handing each byte's [`StepTrace`] to `observe`.
pub fn encrypt_stream_observed(
    key: &SecretKey,
    plaintext: &[u8],
    mut observe: impl FnMut(&StepTrace),
) -> Vec<f64> {
    let mut state = CipherState::new(key);
    plaintext
        .iter()
        .map(|&f| {
            let trace = state.next_traced();
            observe(&trace);
            encrypt_byte(f, trace.element.b, trace.element.x_last)
        })
        .collect()
}

pub fn decrypt_stream(key: &SecretKey, ciphertext: &[f64]) -> Result<Vec<u8>> {
    let state = CipherState::new(key);
    ciphertext
        .iter()
        .zip(state)
        .enumerate()
        .map(|(i, (&c, k))| decrypt_byte(c, k.b, k.x_last).map_err(|e| e.at(i)))
        .collect()
}

/// Decrypts while ignoring rounding residuals, so a wrong key still produces
/// (garbage) output instead of an error.
pub fn decrypt_stream_unchecked(key: &SecretKey, ciphertext: &[f64]) -> Vec<u8> {
    let state = CipherState::new(key);
    ciphertext
        .iter()
        .zip(state)
        .map(|(&c, k)| decode_byte(c, k.b, k.x_last).0)
        .collect()
}

/// The first `len` keystream elements for `key`.
pub fn keystream(key: &SecretKey, len: usize) -> Vec<KeystreamElement> {
    CipherState::new(key).take(len).collect()
}
