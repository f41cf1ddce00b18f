//! Spirale: a one-time-pad style hand cipher built from four short keys.
//!
//! Two keys permute the row and column entries of a Vigenère tableau into a
//! ciphering table; the other two span a product matrix whose diagonal
//! read-out seeds a lagged recurrence keystream. Encryption is a symbol-wise
//! table lookup of plaintext against keystream, so the whole scheme runs
//! with pen and paper — this crate is the reference implementation plus a
//! statistics harness for keystream quality, error propagation and toy
//! key-recovery experiments.
//!
//! ```
//! use spirale::{Alphabet, KeySet};
//!
//! let a = Alphabet::latin();
//! let keys = KeySet::new(&a, ["NVIKKIH", "CTSQEOU", "DNGDKSZ", "EAIWDSH"]).unwrap();
//! let msg = spirale::normalize_text(&a, "We got into Milan").unwrap();
//! let ct = spirale::encrypt(&keys, &a, &msg).unwrap();
//! let pt = spirale::decrypt(&keys, &a, &ct).unwrap();
//! assert_eq!(a.render(&pt), "WEGOTINTOMILAN");
//! ```

pub mod alphabet;
pub mod analysis;
pub mod cipher;
pub mod error;
pub mod keygen;
pub mod keystream;
pub mod permutation;
pub mod table;

pub use alphabet::{Alphabet, AlphabetFormat, Rank};
pub use cipher::{decrypt, encrypt, normalize_text, KeySet};
pub use error::{Error, Result};
pub use keystream::{KeystreamGenerator, Lags, LongKeyMatrix};
pub use permutation::PermutationKey;
pub use table::CipheringTable;
