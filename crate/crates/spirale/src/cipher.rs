//! End-to-end pipeline: four keys build two permuted alphabets, a ciphering
//! table and a product-matrix long key; the keystream is extended lazily to
//! the message length and combined symbol-wise with the plaintext.

use crate::alphabet::{Alphabet, Rank};
use crate::error::{Error, Result};
use crate::keystream::{keystream_prefix, product_matrix, KeystreamGenerator, Lags};
use crate::permutation::PermutationKey;
use crate::table::CipheringTable;

/// The four keys driving one message: K1/K2 permute the table rows and
/// columns, K3/K4 span the long-key product matrix. All four must have the
/// same length.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeySet {
    alphabet_size: usize,
    keys: [Vec<Rank>; 4],
}

impl KeySet {
    /// Parses four key strings over `a`.
    pub fn new(a: &Alphabet, keys: [&str; 4]) -> Result<Self> {
        let k1 = a.tokenize(keys[0])?;
        let k2 = a.tokenize(keys[1])?;
        let k3 = a.tokenize(keys[2])?;
        let k4 = a.tokenize(keys[3])?;
        KeySet::from_ranks(a.size(), [k1, k2, k3, k4])
    }

    /// Builds a key set from rank sequences.
    pub fn from_ranks(alphabet_size: usize, keys: [Vec<Rank>; 4]) -> Result<Self> {
        let len = keys[0].len();
        if len == 0 {
            return Err(Error::EmptyKey);
        }
        for key in &keys {
            if key.len() != len {
                return Err(Error::KeyLengthMismatch { expected: len, found: key.len() });
            }
            for &r in key {
                if r >= alphabet_size {
                    return Err(Error::RankOutOfRange { rank: r, size: alphabet_size });
                }
            }
        }
        Ok(KeySet { alphabet_size, keys })
    }

    /// Size of the alphabet the key ranks were validated against.
    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Key length L (identical for all four keys).
    pub fn key_length(&self) -> usize {
        self.keys[0].len()
    }

    pub fn k1(&self) -> &[Rank] {
        &self.keys[0]
    }

    pub fn k2(&self) -> &[Rank] {
        &self.keys[1]
    }

    pub fn k3(&self) -> &[Rank] {
        &self.keys[2]
    }

    pub fn k4(&self) -> &[Rank] {
        &self.keys[3]
    }

    /// Renders the four keys as strings over `a`.
    pub fn render(&self, a: &Alphabet) -> [String; 4] {
        [a.render(self.k1()), a.render(self.k2()), a.render(self.k3()), a.render(self.k4())]
    }
}

fn check_alphabet(a: &Alphabet, ks: &KeySet) -> Result<()> {
    if a.size() != ks.alphabet_size() {
        return Err(Error::AlphabetMismatch { expected: ks.alphabet_size(), found: a.size() });
    }
    Ok(())
}

/// Builds the ciphering table and long key for a key set. Infallible once
/// the key set matches the alphabet.
pub(crate) fn table_and_long_key(a: &Alphabet, ks: &KeySet) -> (CipheringTable, Vec<Rank>) {
    let k1 = PermutationKey::from_key_ranks(ks.k1());
    let k2 = PermutationKey::from_key_ranks(ks.k2());
    let table = CipheringTable::new(a, &k1, &k2);
    let matrix = product_matrix(&table, ks.k3(), ks.k4()).expect("validated keys");
    let long_key = matrix.diagonal_read();
    (table, long_key)
}

/// Keystream of exactly `len` symbols: the long key as far as it goes,
/// extended by the recurrence only when the message outruns it.
pub(crate) fn stream_for(
    table: &CipheringTable,
    long_key: &[Rank],
    len: usize,
) -> Result<Vec<Rank>> {
    if len <= long_key.len() {
        Ok(long_key[..len].to_vec())
    } else {
        let lags = Lags::for_long_key(long_key.len())?;
        keystream_prefix(table, long_key, lags, len)
    }
}

/// The long key of a key set: the product-matrix diagonal read, k = L²
/// symbols.
pub fn long_key(ks: &KeySet, a: &Alphabet) -> Result<Vec<Rank>> {
    check_alphabet(a, ks)?;
    Ok(table_and_long_key(a, ks).1)
}

/// The first `len` keystream symbols a key set would combine with a
/// message of that length.
pub fn keystream_for(ks: &KeySet, a: &Alphabet, len: usize) -> Result<Vec<Rank>> {
    check_alphabet(a, ks)?;
    let (table, long_key) = table_and_long_key(a, ks);
    stream_for(&table, &long_key, len)
}

/// A ready-to-run keystream generator for a key set, using the default lag
/// rule. Fails for key lengths whose long key is too short to extend
/// (k = L² < 3).
pub fn generator(ks: &KeySet, a: &Alphabet) -> Result<KeystreamGenerator> {
    check_alphabet(a, ks)?;
    let (table, long_key) = table_and_long_key(a, ks);
    let lags = Lags::for_long_key(long_key.len())?;
    KeystreamGenerator::new(table, long_key, lags)
}

/// Maps raw text onto alphabet symbols: greedy longest-token matching with
/// ASCII-uppercase fallback; characters matching nothing are dropped.
pub fn normalize_text(a: &Alphabet, raw: &str) -> Result<Vec<Rank>> {
    let ranks = a.tokenize_lossy(raw);
    if ranks.is_empty() {
        return Err(Error::ResultEmpty);
    }
    Ok(ranks)
}

/// Encrypts a symbol sequence. The ciphertext has the same length.
pub fn encrypt(ks: &KeySet, a: &Alphabet, plaintext: &[Rank]) -> Result<Vec<Rank>> {
    if plaintext.is_empty() {
        return Err(Error::EmptyMessage);
    }
    check_alphabet(a, ks)?;
    a.check_ranks(plaintext)?;
    let (table, long_key) = table_and_long_key(a, ks);
    let stream = stream_for(&table, &long_key, plaintext.len())?;
    Ok(plaintext.iter().zip(stream.iter()).map(|(&p, &k)| table.combine_ranks(p, k)).collect())
}

/// Decrypts a symbol sequence; exact inverse of [`encrypt`] for the same
/// key set.
pub fn decrypt(ks: &KeySet, a: &Alphabet, ciphertext: &[Rank]) -> Result<Vec<Rank>> {
    if ciphertext.is_empty() {
        return Err(Error::EmptyMessage);
    }
    check_alphabet(a, ks)?;
    a.check_ranks(ciphertext)?;
    let (table, long_key) = table_and_long_key(a, ks);
    let stream = stream_for(&table, &long_key, ciphertext.len())?;
    Ok(ciphertext.iter().zip(stream.iter()).map(|(&c, &k)| table.invert_ranks(k, c)).collect())
}
