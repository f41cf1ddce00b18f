//! The ciphering table: a Vigenère tableau whose row and column entry
//! alphabets are independently permuted.
//!
//! The inner grid never changes; only the entry points move. A symbol pair
//! combines as `base[(row_rank(a) + col_rank(b)) mod N]`, so the table is
//! stored as the two rank mappings instead of a materialized N×N grid. With
//! identity permutations this is the plain tabula recta.

use crate::alphabet::{Alphabet, Rank};
use crate::error::{Error, Result};
use crate::permutation::{permute_alphabet, PermutationKey};

/// A doubly-permuted Vigenère tableau over a base alphabet.
///
/// Immutable after construction; lookups are safe to share across threads.
#[derive(Debug, Clone)]
pub struct CipheringTable {
    base: Alphabet,
    /// base rank -> 0-based rank in the permuted row alphabet
    row_rank: Vec<Rank>,
    /// base rank -> 0-based rank in the permuted column alphabet
    col_rank: Vec<Rank>,
    /// 0-based row rank -> base rank (inverse of `row_rank`)
    row_order: Vec<Rank>,
    /// 0-based column rank -> base rank (inverse of `col_rank`)
    col_order: Vec<Rank>,
}

fn rank_maps(base: &Alphabet, perm: &Alphabet) -> Result<(Vec<Rank>, Vec<Rank>)> {
    let n = base.size();
    if perm.size() != n {
        return Err(Error::KeyLengthMismatch { expected: n, found: perm.size() });
    }
    let mut forward = vec![0; n];
    let mut inverse = vec![0; n];
    for (i, slot) in inverse.iter_mut().enumerate() {
        let b = base.rank_of(perm.symbol_at(i))?;
        forward[b] = i;
        *slot = b;
    }
    Ok((forward, inverse))
}

impl CipheringTable {
    /// Builds the table for keys K1 (rows) and K2 (columns).
    pub fn new(a: &Alphabet, k1: &PermutationKey, k2: &PermutationKey) -> Self {
        let rows = permute_alphabet(a, k1);
        let cols = permute_alphabet(a, k2);
        Self::from_permuted(a, &rows, &cols).expect("permuted alphabets are bijections")
    }

    /// The unpermuted table, i.e. the classic Vigenère tabula recta.
    pub fn identity(a: &Alphabet) -> Self {
        let order: Vec<Rank> = (0..a.size()).collect();
        CipheringTable {
            base: a.clone(),
            row_rank: order.clone(),
            col_rank: order.clone(),
            row_order: order.clone(),
            col_order: order,
        }
    }

    /// Builds a table directly from two permuted alphabets.
    pub fn from_permuted(base: &Alphabet, rows: &Alphabet, cols: &Alphabet) -> Result<Self> {
        let (row_rank, row_order) = rank_maps(base, rows)?;
        let (col_rank, col_order) = rank_maps(base, cols)?;
        Ok(CipheringTable { base: base.clone(), row_rank, col_rank, row_order, col_order })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    /// 0-based rank of a base symbol in the permuted row alphabet.
    pub fn row_rank(&self, base_rank: Rank) -> Rank {
        self.row_rank[base_rank]
    }

    /// 0-based rank of a base symbol in the permuted column alphabet.
    pub fn col_rank(&self, base_rank: Rank) -> Rank {
        self.col_rank[base_rank]
    }

    /// The permuted row alphabet, in rank order, as base ranks.
    pub fn row_order(&self) -> &[Rank] {
        &self.row_order
    }

    /// The permuted column alphabet, in rank order, as base ranks.
    pub fn col_order(&self) -> &[Rank] {
        &self.col_order
    }

    /// The □ operator on ranks: `a` enters by row, `b` by column.
    #[inline]
    pub fn combine_ranks(&self, a: Rank, b: Rank) -> Rank {
        (self.row_rank[a] + self.col_rank[b]) % self.base.size()
    }

    /// Recovers `a` such that `combine_ranks(a, b) == c`.
    #[inline]
    pub fn invert_ranks(&self, b: Rank, c: Rank) -> Rank {
        let n = self.base.size();
        self.row_order[(c + n - self.col_rank[b]) % n]
    }

    /// The □ operator on symbols. Non-commutative in general.
    pub fn combine(&self, a: &str, b: &str) -> Result<&str> {
        let ra = self.base.rank_of(a)?;
        let rb = self.base.rank_of(b)?;
        Ok(self.base.symbol_at(self.combine_ranks(ra, rb)))
    }

    /// Enters by column `b`, finds ciphertext `c` and leaves by the row,
    /// yielding the symbol `a` with `combine(a, b) == c`.
    pub fn invert_combine(&self, b: &str, c: &str) -> Result<&str> {
        let rb = self.base.rank_of(b)?;
        let rc = self.base.rank_of(c)?;
        Ok(self.base.symbol_at(self.invert_ranks(rb, rc)))
    }
}
