//! Book-based key derivation: four text extracts are written into a 4×L
//! grid, read vertically from the top-right corner, and cut into four keys;
//! an optional frequency-correction pass swaps high-frequency letters for
//! rare ones to flatten the key statistics.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Default high-frequency English letters, paired index-wise with
/// [`LOW_FREQUENCY_ENGLISH`] (e→z, t→q, a→x, o→j, i→k, n→v).
pub const HIGH_FREQUENCY_ENGLISH: [&str; 6] = ["E", "T", "A", "O", "I", "N"];

/// Default low-frequency English replacement letters.
pub const LOW_FREQUENCY_ENGLISH: [&str; 6] = ["Z", "Q", "X", "J", "K", "V"];

/// One token of an extract or key: its alphabet rank plus the original
/// spelling (case preserved).
#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    rank: usize,
    text: String,
}

fn tokenize_preserving_case(a: &Alphabet, text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        match a.match_prefix(rest) {
            Some((rank, used)) => {
                out.push(Token { rank, text: rest[..used].to_string() });
                rest = &rest[used..];
            }
            None => {
                let ch = rest.chars().next().unwrap();
                return Err(Error::NotInAlphabet { token: ch.to_string() });
            }
        }
    }
    Ok(out)
}

/// Four equal-length extract rows, e.g. the first and last seven letters of
/// the first and last line of a book page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookExtracts {
    rows: [Vec<Token>; 4],
}

impl BookExtracts {
    /// Parses four rows; each must tokenize over `a` and all must have the
    /// same length.
    pub fn parse(a: &Alphabet, rows: [&str; 4]) -> Result<Self> {
        let r0 = tokenize_preserving_case(a, rows[0])?;
        let r1 = tokenize_preserving_case(a, rows[1])?;
        let r2 = tokenize_preserving_case(a, rows[2])?;
        let r3 = tokenize_preserving_case(a, rows[3])?;
        let len = r0.len();
        if len == 0 {
            return Err(Error::EmptyKey);
        }
        for row in [&r1, &r2, &r3] {
            if row.len() != len {
                return Err(Error::BadExtractLength { expected: len, found: row.len() });
            }
        }
        Ok(BookExtracts { rows: [r0, r1, r2, r3] })
    }

    /// Common row length L.
    pub fn row_length(&self) -> usize {
        self.rows[0].len()
    }
}

/// Reads the 4×L grid column by column from the rightmost column to the
/// leftmost (top row first within a column) and cuts the result into four
/// keys of L symbols each. Case is preserved.
pub fn derive_keys(e: &BookExtracts) -> [String; 4] {
    let len = e.row_length();
    let mut flat: Vec<&Token> = Vec::with_capacity(4 * len);
    for col in (0..len).rev() {
        for row in &e.rows {
            flat.push(&row[col]);
        }
    }
    std::array::from_fn(|i| flat[i * len..(i + 1) * len].iter().map(|t| t.text.as_str()).collect())
}

/// Replaces every even-numbered occurrence (2nd, 4th, ...) of each
/// high-frequency letter with its paired low-frequency letter, counting
/// occurrences across the concatenation of all four keys. Output keys are
/// rendered in the alphabet's canonical (uppercase) spelling.
pub fn frequency_correct(
    a: &Alphabet,
    keys: &[String; 4],
    high: &[&str],
    low: &[&str],
) -> Result<[String; 4]> {
    if high.len() != low.len() {
        return Err(Error::SetSizeMismatch { high: high.len(), low: low.len() });
    }
    let high_ranks: Vec<usize> = high.iter().map(|t| a.rank_of(t)).collect::<Result<_>>()?;
    let low_ranks: Vec<usize> = low.iter().map(|t| a.rank_of(t)).collect::<Result<_>>()?;

    let mut seen = vec![0usize; high_ranks.len()];
    let mut out: [String; 4] = Default::default();
    for (slot, key) in keys.iter().enumerate() {
        let tokens = tokenize_preserving_case(a, key)?;
        let mut corrected = String::new();
        for tok in tokens {
            let mut rank = tok.rank;
            if let Some(i) = high_ranks.iter().position(|&h| h == rank) {
                seen[i] += 1;
                if seen[i].is_multiple_of(2) {
                    rank = low_ranks[i];
                }
            }
            corrected.push_str(a.symbol_at(rank));
        }
        out[slot] = corrected;
    }
    Ok(out)
}

/// [`frequency_correct`] with the default English letter sets.
pub fn frequency_correct_default(a: &Alphabet, keys: &[String; 4]) -> Result<[String; 4]> {
    frequency_correct(a, keys, &HIGH_FREQUENCY_ENGLISH, &LOW_FREQUENCY_ENGLISH)
}
