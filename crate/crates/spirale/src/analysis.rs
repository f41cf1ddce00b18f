//! Statistical and structural analysis: symbol histograms, index of
//! coincidence, chi-square flatness, autocorrelation, repeated n-grams,
//! error-propagation mapping and a desk-scale exhaustive key search.
//!
//! The key search partitions its candidate space across rayon workers when
//! the `parallel` feature (on by default) is enabled;
//! [`exhaustive_search_small_sequential`] is the plain single-threaded lane
//! and always produces the same, order-independent result.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::{Alphabet, Rank};
use crate::cipher::{self, KeySet};
use crate::error::{Error, Result};
use crate::keystream::{keystream_prefix, KeystreamGenerator};

/// Reference index of coincidence of English text. Standard value from the
/// classical cryptanalysis literature (Friedman's kappa for English,
/// see e.g. Menezes/van Oorschot/Vanstone, *Handbook of Applied
/// Cryptography*, Table 7.1).
pub const ENGLISH_IC: f64 = 0.0667;

/// Index of coincidence of uniformly random 26-symbol text (1/26).
pub const UNIFORM_IC_26: f64 = 1.0 / 26.0;

/// 0.999 quantile of the chi-square distribution with 25 degrees of
/// freedom (NIST/SEMATECH e-Handbook of Statistical Methods, chi-square
/// distribution table).
pub const CHI2_DF25_P999: f64 = 52.6197;

/// Cap on the number of keysets [`exhaustive_search_small`] will visit.
pub const SEARCH_BUDGET: u128 = 100_000_000;

/// Summary statistics over one symbol sequence.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    /// Per-symbol counts, indexed by rank; sums to `length`.
    pub histogram: Vec<u64>,
    /// Index of coincidence in [0, 1].
    pub ic: f64,
    /// Chi-square statistic against the uniform distribution.
    pub chi2: f64,
    /// Coincidence rate per requested lag.
    pub autocorr: Vec<(usize, f64)>,
    /// Number of symbols analyzed.
    pub length: usize,
}

impl AnalysisReport {
    /// Computes every statistic in one pass over `text`.
    pub fn compute(a: &Alphabet, text: &[Rank], lags: &[usize]) -> Result<Self> {
        let histogram = frequency_histogram(a, text)?;
        let ic = index_of_coincidence(text)?;
        let chi2 = chi_square_uniform(&histogram);
        let autocorr = lags
            .iter()
            .map(|&lag| Ok((lag, autocorrelation_coincidence(text, lag)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(AnalysisReport { histogram, ic, chi2, autocorr, length: text.len() })
    }
}

/// Exact symbol counts, indexed by alphabet rank.
pub fn frequency_histogram(a: &Alphabet, text: &[Rank]) -> Result<Vec<u64>> {
    a.check_ranks(text)?;
    let mut counts = vec![0u64; a.size()];
    for &r in text {
        counts[r] += 1;
    }
    Ok(counts)
}

/// Index of coincidence: the probability that two distinct positions hold
/// the same symbol, `sum f(f-1) / (L(L-1))`.
pub fn index_of_coincidence(text: &[Rank]) -> Result<f64> {
    let len = text.len();
    if len < 2 {
        return Err(Error::TooShort { length: len });
    }
    let mut counts: HashMap<Rank, u64> = HashMap::new();
    for &r in text {
        *counts.entry(r).or_insert(0) += 1;
    }
    let coincidences: u128 = counts.values().map(|&f| (f as u128) * (f as u128 - 1)).sum();
    Ok(coincidences as f64 / (len as f64 * (len as f64 - 1.0)))
}

/// Chi-square statistic of a histogram against the uniform distribution,
/// `sum (f - L/N)^2 / (L/N)`.
pub fn chi_square_uniform(histogram: &[u64]) -> f64 {
    let total: u64 = histogram.iter().sum();
    if total == 0 || histogram.is_empty() {
        return 0.0;
    }
    let expected = total as f64 / histogram.len() as f64;
    histogram
        .iter()
        .map(|&f| {
            let delta = f as f64 - expected;
            delta * delta / expected
        })
        .sum()
}

/// Fraction of positions `i` with `text[i] == text[i + lag]`.
pub fn autocorrelation_coincidence(text: &[Rank], lag: usize) -> Result<f64> {
    if lag == 0 || lag >= text.len() {
        return Err(Error::BadLag { lag, length: text.len() });
    }
    let pairs = text.len() - lag;
    let matches = (0..pairs).filter(|&i| text[i] == text[i + lag]).count();
    Ok(matches as f64 / pairs as f64)
}

/// An n-gram that occurs at least twice, with every 0-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramSites {
    pub gram: Vec<Rank>,
    pub positions: Vec<usize>,
}

impl NgramSites {
    /// Distances between consecutive occurrences (Kasiski gaps).
    pub fn gaps(&self) -> Vec<usize> {
        self.positions.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Lists every n-gram occurring at least twice, ordered by first position.
pub fn repeated_ngrams(text: &[Rank], n: usize) -> Vec<NgramSites> {
    if n == 0 || text.len() < n {
        return Vec::new();
    }
    let mut sites: HashMap<&[Rank], Vec<usize>> = HashMap::new();
    for (i, w) in text.windows(n).enumerate() {
        sites.entry(w).or_default().push(i);
    }
    let mut out: Vec<NgramSites> = sites
        .into_iter()
        .filter(|(_, positions)| positions.len() >= 2)
        .map(|(gram, positions)| NgramSites { gram: gram.to_vec(), positions })
        .collect();
    out.sort_by_key(|s| s.positions[0]);
    out
}

/// Flips one long-key symbol, regenerates the stream, and returns every
/// 1-based position up to `horizon` where the flipped stream differs from
/// the original. An error in seed cell p can only surface at p and at
/// positions reached by repeatedly jumping d or k forward.
pub fn error_propagation_profile(
    gen: &KeystreamGenerator,
    flip_position: usize,
    horizon: usize,
) -> Result<BTreeSet<usize>> {
    let lags = gen.lags();
    if flip_position == 0 || flip_position > lags.k {
        return Err(Error::BadPosition { position: flip_position, bound: lags.k });
    }
    if horizon < lags.k {
        return Err(Error::BadPosition { position: horizon, bound: lags.k });
    }
    let table = gen.table();
    let n = table.size();
    let original = keystream_prefix(table, gen.long_key(), lags, horizon)?;
    let mut flipped_key = gen.long_key().to_vec();
    flipped_key[flip_position - 1] = (flipped_key[flip_position - 1] + 1) % n;
    let flipped = keystream_prefix(table, &flipped_key, lags, horizon)?;
    Ok(original
        .iter()
        .zip(flipped.iter())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i + 1)
        .collect())
}

fn keyset_from_index(mut idx: u64, n: usize, key_length: usize) -> KeySet {
    let keys: [Vec<Rank>; 4] = std::array::from_fn(|_| {
        (0..key_length)
            .map(|_| {
                let digit = (idx % n as u64) as usize;
                idx /= n as u64;
                digit
            })
            .collect()
    });
    KeySet::from_ranks(n, keys).expect("digits are valid ranks")
}

fn candidate_matches(a: &Alphabet, ks: &KeySet, plaintext: &[Rank], ciphertext: &[Rank]) -> bool {
    let (table, long_key) = cipher::table_and_long_key(a, ks);
    let stream = match cipher::stream_for(&table, &long_key, plaintext.len()) {
        Ok(s) => s,
        Err(_) => return false,
    };
    plaintext
        .iter()
        .zip(stream.iter())
        .map(|(&p, &k)| table.combine_ranks(p, k))
        .eq(ciphertext.iter().copied())
}

fn search_space(n: usize, key_length: usize) -> Result<u64> {
    match (n as u128).checked_pow(4 * key_length as u32) {
        Some(total) if total <= SEARCH_BUDGET => Ok(total as u64),
        Some(total) => Err(Error::BudgetExceeded { required: total, budget: SEARCH_BUDGET }),
        None => Err(Error::BudgetExceeded { required: u128::MAX, budget: SEARCH_BUDGET }),
    }
}

fn check_search_inputs(
    a: &Alphabet,
    plaintext: &[Rank],
    ciphertext: &[Rank],
    key_length: usize,
) -> Result<u64> {
    if key_length == 0 {
        return Err(Error::EmptyKey);
    }
    if plaintext.is_empty() {
        return Err(Error::EmptyMessage);
    }
    a.check_ranks(plaintext)?;
    a.check_ranks(ciphertext)?;
    let total = search_space(a.size(), key_length)?;
    if plaintext.len() > key_length * key_length {
        // every candidate would need the recurrence; fail fast if the lag
        // rule cannot produce valid lags for this key length
        crate::keystream::Lags::for_long_key(key_length * key_length)?;
    }
    Ok(total)
}

/// Enumerates every keyset of the given key length whose encryption of
/// `known_plaintext` equals `ciphertext`. The generating keyset is always
/// in the result. Results are in a canonical order independent of the
/// execution strategy.
///
/// Uses rayon when the `parallel` feature is enabled.
pub fn exhaustive_search_small(
    a: &Alphabet,
    known_plaintext: &[Rank],
    ciphertext: &[Rank],
    key_length: usize,
) -> Result<Vec<KeySet>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let total = check_search_inputs(a, known_plaintext, ciphertext, key_length)?;
        let n = a.size();
        Ok((0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let ks = keyset_from_index(idx, n, key_length);
                candidate_matches(a, &ks, known_plaintext, ciphertext).then_some(ks)
            })
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        exhaustive_search_small_sequential(a, known_plaintext, ciphertext, key_length)
    }
}

/// Single-threaded reference lane of [`exhaustive_search_small`]; the
/// benchmark suite compares the two.
pub fn exhaustive_search_small_sequential(
    a: &Alphabet,
    known_plaintext: &[Rank],
    ciphertext: &[Rank],
    key_length: usize,
) -> Result<Vec<KeySet>> {
    let total = check_search_inputs(a, known_plaintext, ciphertext, key_length)?;
    let n = a.size();
    Ok((0..total)
        .filter_map(|idx| {
            let ks = keyset_from_index(idx, n, key_length);
            candidate_matches(a, &ks, known_plaintext, ciphertext).then_some(ks)
        })
        .collect())
}
