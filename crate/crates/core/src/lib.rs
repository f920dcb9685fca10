//! A clipped-neural-network chaotic stream cipher, and a chosen-plaintext
//! attack that recovers an equivalent key from the ciphertexts of two
//! complementary plaintexts.
//!
//! ```
//! use cnnc_core::{attack, cipher, SecretKey};
//!
//! let key = SecretKey::new(1.99, 0.41, "+-+-+-+-".parse().unwrap()).unwrap();
//! let f1 = b"chosen plaintext".to_vec();
//! let f2 = attack::make_chosen_pair(&f1);
//! let (k1, _k2) = attack::derive_equivalent_key(
//!     &f1,
//!     &cipher::encrypt_stream(&key, &f1),
//!     &f2,
//!     &cipher::encrypt_stream(&key, &f2),
//! )
//! .unwrap();
//!
//! let secret = b"attack at dawn".to_vec();
//! let c = cipher::encrypt_stream(&key, &secret);
//! assert_eq!(attack::decrypt_with_equivalent(&c, &k1).unwrap(), secret);
//! ```

pub mod attack;
pub mod cipher;
pub mod cnn;
pub mod error;
pub mod modular;
pub mod oracle;
pub mod tent;

pub use attack::{EquivalentKey, EquivalentKeyRecord, Variant};
pub use cipher::{CipherState, KeystreamElement, SecretKey};
pub use cnn::{Cells, WeightMatrix};
pub use error::{Error, Result};
pub use oracle::OracleReport;
