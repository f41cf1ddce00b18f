//! Long-key generation and keystream extension.
//!
//! Two keys K3 and K4 span a product matrix (`cell[p][q] = K3[p] □ K4[q]`);
//! reading it along ascending anti-diagonals from the top-left corner gives
//! the long key of k = P·Q symbols. Longer streams come from the lagged
//! recurrence: the symbol at 1-based position n > k is
//! `stream[n-k] □ stream[n-d]`, with the older term entering by row.
//!
//! The plain integer form of the recurrence (congruent addition instead of
//! the table) is [`numeric_recurrence`]; it reproduces the classic lagged
//! Fibonacci sequences that motivate the lag guard k ≠ 2d.

use crate::alphabet::Rank;
use crate::error::{Error, Result};
use crate::table::CipheringTable;

/// The pair of recurrence lags: long lag `k` (the long-key length) and
/// short lag `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lags {
    pub k: usize,
    pub d: usize,
}

impl Lags {
    /// Validates `0 < d < k` and `k != 2d`.
    pub fn new(k: usize, d: usize) -> Result<Self> {
        if d == 0 || d >= k || k == 2 * d {
            return Err(Error::InvalidLag { k, d });
        }
        Ok(Lags { k, d })
    }

    /// Default lags for a long key of length `k`: `d = (k - 1) / 2`.
    ///
    /// The floor keeps `d` strictly below `k / 2`, so `k = 2d` can never
    /// occur; for k = 49 this yields d = 24.
    pub fn for_long_key(k: usize) -> Result<Self> {
        Lags::new(k, k.saturating_sub(1) / 2)
    }
}

/// The P×Q product matrix of two keys under a ciphering table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongKeyMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Rank>,
}

impl LongKeyMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Cell at row `p`, column `q` (0-based).
    pub fn cell(&self, p: usize, q: usize) -> Rank {
        self.cells[p * self.cols + q]
    }

    /// Serializes the matrix along ascending anti-diagonals from the
    /// top-left corner; every cell is visited exactly once.
    pub fn diagonal_read(&self) -> Vec<Rank> {
        diagonal_order(self.rows, self.cols).map(|(p, q)| self.cell(p, q)).collect()
    }
}

/// Anti-diagonal visiting order for a P×Q matrix: diagonals `s = p + q`
/// ascending, and within each diagonal from bottom-left to top-right
/// (decreasing row). Both dimensions must be nonzero.
pub fn diagonal_order(rows: usize, cols: usize) -> impl Iterator<Item = (usize, usize)> {
    assert!(rows > 0 && cols > 0, "matrix dimensions must be nonzero");
    (0..rows + cols - 1).flat_map(move |s| {
        let start = s.min(rows - 1);
        (0..=start).map(move |i| (start - i, s - (start - i))).filter(move |&(_, q)| q < cols)
    })
}

/// Fills the product matrix `cell[p][q] = k3[p] □ k4[q]`.
pub fn product_matrix(table: &CipheringTable, k3: &[Rank], k4: &[Rank]) -> Result<LongKeyMatrix> {
    if k3.is_empty() || k4.is_empty() {
        return Err(Error::EmptyKey);
    }
    table.base().check_ranks(k3)?;
    table.base().check_ranks(k4)?;
    let mut cells = Vec::with_capacity(k3.len() * k4.len());
    for &r in k3 {
        for &c in k4 {
            cells.push(table.combine_ranks(r, c));
        }
    }
    Ok(LongKeyMatrix { rows: k3.len(), cols: k4.len(), cells })
}

/// Computes the first `n` keystream symbols from a long key: the long key
/// verbatim, then the lagged recurrence. Pure counterpart of
/// [`KeystreamGenerator`] for callers that want no shared state.
pub fn keystream_prefix(
    table: &CipheringTable,
    long_key: &[Rank],
    lags: Lags,
    n: usize,
) -> Result<Vec<Rank>> {
    if long_key.len() != lags.k {
        return Err(Error::BadSeedLength { expected: lags.k, found: long_key.len() });
    }
    Lags::new(lags.k, lags.d)?;
    table.base().check_ranks(long_key)?;
    let mut stream = long_key.to_vec();
    extend_stream(table, &mut stream, lags, n);
    stream.truncate(n);
    Ok(stream)
}

fn extend_stream(table: &CipheringTable, stream: &mut Vec<Rank>, lags: Lags, n: usize) {
    while stream.len() < n {
        let m = stream.len(); // 0-based index of the symbol being produced
        let sym = table.combine_ranks(stream[m - lags.k], stream[m - lags.d]);
        stream.push(sym);
    }
}

/// Stateful keystream generator: a long key plus recurrence lags.
///
/// Sequential by design; clone it rather than sharing one across threads,
/// or use [`keystream_prefix`].
#[derive(Debug, Clone)]
pub struct KeystreamGenerator {
    table: CipheringTable,
    lags: Lags,
    stream: Vec<Rank>,
}

impl KeystreamGenerator {
    pub fn new(table: CipheringTable, long_key: Vec<Rank>, lags: Lags) -> Result<Self> {
        if long_key.len() != lags.k {
            return Err(Error::BadSeedLength { expected: lags.k, found: long_key.len() });
        }
        Lags::new(lags.k, lags.d)?;
        table.base().check_ranks(&long_key)?;
        Ok(KeystreamGenerator { table, lags, stream: long_key })
    }

    /// Builds a generator from a product matrix with the default lag rule.
    pub fn from_matrix(table: CipheringTable, matrix: &LongKeyMatrix) -> Result<Self> {
        let long_key = matrix.diagonal_read();
        let lags = Lags::for_long_key(long_key.len())?;
        KeystreamGenerator::new(table, long_key, lags)
    }

    pub fn lags(&self) -> Lags {
        self.lags
    }

    pub fn table(&self) -> &CipheringTable {
        &self.table
    }

    /// The seed long key (first k symbols).
    pub fn long_key(&self) -> &[Rank] {
        &self.stream[..self.lags.k]
    }

    /// Count of symbols produced so far.
    pub fn emitted(&self) -> usize {
        self.stream.len()
    }

    /// Returns the first `n` symbols, extending the stream as needed.
    /// Repeated calls agree on every prefix.
    pub fn generate(&mut self, n: usize) -> &[Rank] {
        extend_stream(&self.table, &mut self.stream, self.lags, n);
        &self.stream[..n]
    }
}

/// Lag checking policy for [`numeric_recurrence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagGuard {
    /// Enforce k ≠ 2d, as the cipher does.
    Spirale,
    /// Allow k = 2d, e.g. to replicate the plain Fibonacci sequence.
    Relaxed,
}

/// Plain integer recurrence `X[n] = (X[n-d] + X[n-k]) mod modulus`.
///
/// Values are residues in `[0, modulus)`; a 1-based convention where the
/// modulus prints as itself maps onto this by reducing mod `modulus`.
pub fn numeric_recurrence(
    seed: &[u32],
    d: usize,
    k: usize,
    modulus: u32,
    n: usize,
    guard: LagGuard,
) -> Result<Vec<u32>> {
    if seed.len() != k {
        return Err(Error::BadSeedLength { expected: k, found: seed.len() });
    }
    if d == 0 || d >= k || (guard == LagGuard::Spirale && k == 2 * d) {
        return Err(Error::InvalidLag { k, d });
    }
    let mut xs: Vec<u32> = seed.iter().map(|&v| v % modulus).collect();
    while xs.len() < n {
        let m = xs.len();
        xs.push((xs[m - d] + xs[m - k]) % modulus);
    }
    xs.truncate(n);
    Ok(xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, AlphabetFormat};
    use crate::permutation::PermutationKey;

    fn latin() -> Alphabet {
        Alphabet::latin()
    }

    fn worked_table() -> CipheringTable {
        let a = latin();
        let k1 = PermutationKey::new(&a, "NVIKKIH").unwrap();
        let k2 = PermutationKey::new(&a, "CTSQEOU").unwrap();
        CipheringTable::new(&a, &k1, &k2)
    }

    const WORKED_LONG_KEY: &str = "BHVUBSBOYAGVLGKOASTQPPIXADVTJFFKIZGNPPMOXUTYCYDGH";

    fn worked_matrix() -> LongKeyMatrix {
        let a = latin();
        let t = worked_table();
        product_matrix(&t, &a.tokenize("DNGDKSZ").unwrap(), &a.tokenize("EAIWDSH").unwrap())
            .unwrap()
    }

    #[test]
    fn worked_product_matrix_cells() {
        let a = latin();
        let m = worked_matrix();
        assert_eq!(m.rows(), 7);
        assert_eq!(m.cols(), 7);
        let expected =
            ["BVSAKPT", "HBYGQVZ", "UOLTDIM", "BVSAKPT", "GAXFPUY", "OIFNXCG", "PJGOYDH"];
        for (p, row) in expected.iter().enumerate() {
            let got: Vec<Rank> = (0..7).map(|q| m.cell(p, q)).collect();
            assert_eq!(a.render(&got), *row);
        }
    }

    #[test]
    fn worked_long_key_from_diagonal_read() {
        let a = latin();
        let long = worked_matrix().diagonal_read();
        assert_eq!(long.len(), 49);
        assert_eq!(a.render(&long), WORKED_LONG_KEY);
    }

    #[test]
    fn diagonal_read_is_a_cell_permutation() {
        let m = worked_matrix();
        let mut from_read = m.diagonal_read();
        let mut cells: Vec<Rank> =
            (0..7).flat_map(|p| (0..7).map(move |q| (p, q))).map(|(p, q)| m.cell(p, q)).collect();
        from_read.sort_unstable();
        cells.sort_unstable();
        assert_eq!(from_read, cells);
    }

    #[test]
    fn single_cell_matrix() {
        let a = latin();
        let t = CipheringTable::identity(&a);
        let m = product_matrix(&t, &a.tokenize("A").unwrap(), &a.tokenize("A").unwrap()).unwrap();
        assert_eq!(m.diagonal_read(), vec![t.combine_ranks(0, 0)]);
    }

    #[test]
    fn empty_keys_are_rejected() {
        let a = latin();
        let t = CipheringTable::identity(&a);
        assert_eq!(product_matrix(&t, &[], &[0]), Err(Error::EmptyKey));
    }

    /// The 4×5 numeric example: 1-based values under congruent addition.
    /// The same anti-diagonal order serializes it to the printed sequence.
    #[test]
    fn numeric_four_by_five_diagonal() {
        let k1 = [19u32, 15, 12, 9];
        let k2 = [20u32, 1, 9, 18, 5];
        let cells: Vec<Vec<u32>> =
            k1.iter().map(|a| k2.iter().map(|b| (a + b) % 26).collect()).collect();
        let read: Vec<u32> = diagonal_order(4, 5)
            .map(|(p, q)| if cells[p][q] == 0 { 26 } else { cells[p][q] })
            .collect();
        assert_eq!(
            read,
            vec![13, 9, 20, 6, 16, 2, 3, 13, 24, 11, 10, 21, 7, 24, 18, 4, 20, 1, 17, 14]
        );
    }

    /// Same keys through the identity table land one rank lower: the table
    /// adds 0-based ranks, while the 1-based congruent sum sits one higher.
    #[test]
    fn identity_product_matches_numeric_up_to_rank_convention() {
        let a = latin();
        let t = CipheringTable::identity(&a);
        let k3 = a.tokenize("SOLI").unwrap(); // 1-based ranks 19 15 12 9
        let k4 = a.tokenize("TAIRE").unwrap(); // 1-based ranks 20 1 9 18 5
        let m = product_matrix(&t, &k3, &k4).unwrap();
        let first_row_one_based: Vec<u32> = (0..5).map(|q| m.cell(0, q) as u32 + 1).collect();
        assert_eq!(first_row_one_based, vec![12, 19, 1, 10, 23]);
        let numeric_first_row: Vec<u32> =
            [20u32, 1, 9, 18, 5].iter().map(|b| (19 + b) % 26).collect();
        assert_eq!(numeric_first_row, vec![13, 20, 2, 11, 24]);
        for (cell, num) in first_row_one_based.iter().zip(numeric_first_row.iter()) {
            assert_eq!((cell + 1) % 26, num % 26);
        }
    }

    #[test]
    fn worked_keystream_positions_50_to_75() {
        let a = latin();
        let t = worked_table();
        let long = worked_matrix().diagonal_read();
        let mut generator = KeystreamGenerator::new(t, long, Lags::new(49, 24).unwrap()).unwrap();
        let stream = generator.generate(75);
        assert_eq!(a.render(&stream[49..75]), "WSINJKRPCOPSZKVGJBOULOZEKP");
    }

    #[test]
    fn worked_keystream_position_76() {
        // position 76 = X27 □ X52 = V □ I, hand-checked against the table
        let a = latin();
        let t = worked_table();
        let long = worked_matrix().diagonal_read();
        let mut generator =
            KeystreamGenerator::new(t.clone(), long, Lags::new(49, 24).unwrap()).unwrap();
        let stream = generator.generate(76).to_vec();
        assert_eq!(a.symbol_at(stream[26]), "V");
        assert_eq!(a.symbol_at(stream[51]), "I");
        assert_eq!(stream[75], t.combine_ranks(stream[26], stream[51]));
        assert_eq!(a.symbol_at(stream[75]), "M");
    }

    #[test]
    fn prefix_up_to_k_is_the_long_key() {
        let t = worked_table();
        let long = worked_matrix().diagonal_read();
        let prefix = keystream_prefix(&t, &long, Lags::new(49, 24).unwrap(), 30).unwrap();
        assert_eq!(prefix, long[..30].to_vec());
    }

    #[test]
    fn lag_guard_rejects_bad_lags() {
        assert_eq!(Lags::new(48, 24), Err(Error::InvalidLag { k: 48, d: 24 }));
        assert_eq!(Lags::new(10, 0), Err(Error::InvalidLag { k: 10, d: 0 }));
        assert_eq!(Lags::new(10, 10), Err(Error::InvalidLag { k: 10, d: 10 }));
        let t = worked_table();
        let long = vec![0; 48];
        assert!(matches!(
            KeystreamGenerator::new(t, long, Lags { k: 48, d: 24 }),
            Err(Error::InvalidLag { .. })
        ));
    }

    #[test]
    fn default_lag_rule() {
        assert_eq!(Lags::for_long_key(49).unwrap(), Lags { k: 49, d: 24 });
        assert_eq!(Lags::for_long_key(20).unwrap(), Lags { k: 20, d: 9 });
        assert!(Lags::for_long_key(1).is_err());
        assert!(Lags::for_long_key(2).is_err());
        for k in 3..200 {
            let lags = Lags::for_long_key(k).unwrap();
            assert!(lags.d > 0 && lags.d < k && k != 2 * lags.d);
        }
    }

    #[test]
    fn numeric_fibonacci_k2() {
        // classic sequence; the 1-based convention prints residue 0 as 26
        let seq = numeric_recurrence(&[16, 19], 1, 2, 26, 19, LagGuard::Relaxed).unwrap();
        let printed: Vec<u32> = seq.iter().map(|&v| if v == 0 { 26 } else { v }).collect();
        assert_eq!(
            printed,
            vec![16, 19, 9, 2, 11, 13, 24, 11, 9, 20, 3, 23, 26, 23, 23, 20, 17, 11, 2]
        );
    }

    #[test]
    fn numeric_k4_d1() {
        let seq = numeric_recurrence(&[16, 19, 9, 2], 1, 4, 26, 23, LagGuard::Relaxed).unwrap();
        let printed: Vec<u32> = seq.iter().map(|&v| if v == 0 { 26 } else { v }).collect();
        assert_eq!(
            printed,
            vec![
                16, 19, 9, 2, 18, 11, 20, 22, 14, 25, 19, 15, 3, 2, 21, 10, 13, 15, 10, 20, 7, 22,
                6
            ]
        );
    }

    #[test]
    fn numeric_spirale_guard() {
        assert_eq!(
            numeric_recurrence(&[1, 2, 3, 4], 2, 4, 26, 10, LagGuard::Spirale),
            Err(Error::InvalidLag { k: 4, d: 2 })
        );
        // the same lags are fine when relaxed
        assert!(numeric_recurrence(&[1, 2, 3, 4], 2, 4, 26, 10, LagGuard::Relaxed).is_ok());
        assert_eq!(
            numeric_recurrence(&[1, 2, 3], 1, 4, 26, 10, LagGuard::Relaxed),
            Err(Error::BadSeedLength { expected: 4, found: 3 })
        );
    }

    #[test]
    fn one_by_one_diagonal() {
        let order: Vec<(usize, usize)> = diagonal_order(1, 1).collect();
        assert_eq!(order, vec![(0, 0)]);
    }

    #[test]
    fn rectangular_diagonals_cover_every_cell() {
        for (p, q) in [(1, 5), (5, 1), (3, 4), (4, 3), (2, 2)] {
            let mut seen = vec![false; p * q];
            for (r, c) in diagonal_order(p, q) {
                assert!(r < p && c < q);
                assert!(!seen[r * q + c]);
                seen[r * q + c] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn prefix_stability(n in 0usize..120, m in 0usize..120) {
                let t = worked_table();
                let long = worked_matrix().diagonal_read();
                let lags = Lags::new(49, 24).unwrap();
                let shorter = keystream_prefix(&t, &long, lags, n).unwrap();
                let longer = keystream_prefix(&t, &long, lags, n + m).unwrap();
                prop_assert_eq!(&shorter[..], &longer[..n]);
            }

            #[test]
            fn identity_table_reduces_to_numeric_recurrence(
                seed in proptest::collection::vec(0usize..26, 5..30),
                d_pick in 1usize..29,
            ) {
                let k = seed.len();
                let d = d_pick % (k - 1) + 1; // 1..k-1
                prop_assume!(k != 2 * d);
                let a = Alphabet::latin();
                let t = CipheringTable::identity(&a);
                let lags = Lags::new(k, d).unwrap();
                let stream = keystream_prefix(&t, &seed, lags, 1000).unwrap();
                let seed32: Vec<u32> = seed.iter().map(|&v| v as u32).collect();
                let numeric =
                    numeric_recurrence(&seed32, d, k, 26, 1000, LagGuard::Spirale).unwrap();
                let stream32: Vec<u32> = stream.iter().map(|&v| v as u32).collect();
                prop_assert_eq!(stream32, numeric);
            }
        }
    }

    #[test]
    fn multichar_token_alphabet_works_end_to_end() {
        let a = Alphabet::parse("A\nB\n()\nC\nD\n", AlphabetFormat::TokenPerLine).unwrap();
        let k1 = PermutationKey::new(&a, "B()").unwrap();
        let t = CipheringTable::new(&a, &k1, &k1);
        // "()CD" is three tokens: (), C, D
        let m =
            product_matrix(&t, &a.tokenize("AB").unwrap(), &a.tokenize("()CD").unwrap()).unwrap();
        let long = m.diagonal_read();
        assert_eq!(long.len(), 6);
        let stream = keystream_prefix(&t, &long, Lags::for_long_key(6).unwrap(), 40).unwrap();
        assert_eq!(stream.len(), 40);
    }
}
