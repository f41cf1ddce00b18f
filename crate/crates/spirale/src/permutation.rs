//! Key-driven alphabet permutation: right-to-left counting around the
//! alphabet, skipping symbols that were already picked.
//!
//! A key such as `BHMAY` turns into the permutation list `[2, 8, 13, 1, 25]`
//! (1-based alphabet ranks). Counting starts just past the rightmost symbol
//! and steps leftward, wrapping at the left end; each count lands on a live
//! symbol which is picked and removed. The list is read cyclically until the
//! whole alphabet is consumed, which always yields a bijection.

use crate::alphabet::{Alphabet, Rank};
use crate::error::{Error, Result};

/// A permutation key: the 1-based rank list derived from a key string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationKey {
    counts: Vec<usize>,
}

impl PermutationKey {
    /// Derives the rank list from a key string over `a`.
    ///
    /// Every character must belong to the alphabet (spaces and other
    /// strangers are rejected, not skipped); lowercase ASCII folds onto
    /// uppercase tokens.
    pub fn new(a: &Alphabet, key: &str) -> Result<Self> {
        if key.is_empty() {
            return Err(Error::EmptyKey);
        }
        let ranks = a.tokenize(key)?;
        if ranks.is_empty() {
            return Err(Error::EmptyKey);
        }
        Ok(PermutationKey { counts: ranks.iter().map(|r| r + 1).collect() })
    }

    /// Builds a key directly from a 1-based rank list.
    pub fn from_rank_list(counts: Vec<usize>, alphabet_size: usize) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyKey);
        }
        for &c in &counts {
            if c == 0 || c > alphabet_size {
                return Err(Error::RankOutOfRange { rank: c, size: alphabet_size });
            }
        }
        Ok(PermutationKey { counts })
    }

    /// Builds a key from 0-based alphabet ranks (no validation needed when
    /// the ranks come from an already-checked key).
    pub(crate) fn from_key_ranks(ranks: &[Rank]) -> Self {
        PermutationKey { counts: ranks.iter().map(|r| r + 1).collect() }
    }

    /// The 1-based permutation list.
    pub fn rank_list(&self) -> &[usize] {
        &self.counts
    }
}

/// Derives the 1-based permutation list for a key string.
pub fn key_to_rank_list(a: &Alphabet, key: &str) -> Result<Vec<usize>> {
    Ok(PermutationKey::new(a, key)?.counts)
}

/// Permutes `a` under `key`.
///
/// The cursor starts one step past the rightmost symbol; each count from the
/// cyclic rank list walks leftward over not-yet-picked symbols (wrapping
/// from the first symbol back to the last) and picks where it lands.
pub fn permute_alphabet(a: &Alphabet, key: &PermutationKey) -> Alphabet {
    let n = a.size();
    let mut live: Vec<Rank> = (0..n).collect();
    let mut picked = Vec::with_capacity(n);
    // pos means: the next leftward step lands on live[pos - 1].
    let mut pos = n;
    let mut next = 0usize;
    while !live.is_empty() {
        let count = key.counts[next % key.counts.len()];
        next += 1;
        let len = live.len() as i64;
        let target = (pos as i64 - count as i64).rem_euclid(len) as usize;
        picked.push(live.remove(target));
        pos = target;
    }
    Alphabet::new(picked.into_iter().map(|r| a.symbol_at(r).to_string()))
        .expect("permutation of a valid alphabet is valid")
}
