//! Ordered alphabets of distinct symbol tokens with bidirectional
//! symbol/rank lookup. Everything else in the crate is generic over an
//! [`Alphabet`]: ciphering tables, keystreams and statistics all work on
//! 0-based ranks into one of these.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// 0-based position of a symbol inside an alphabet.
pub type Rank = usize;

/// Source layout for [`Alphabet::parse`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphabetFormat {
    /// One glyph (char) per token, all on a single line.
    SingleLine,
    /// One token per line; tokens may span several characters.
    TokenPerLine,
}

/// An ordered sequence of distinct, non-empty symbol tokens.
///
/// Ranks are 0-based: `rank_of(symbol_at(i)) == i`. Immutable after
/// construction, so it can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Rank>,
    max_token_chars: usize,
}

impl Alphabet {
    /// Builds an alphabet from tokens, preserving their order.
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.len() < 2 {
            return Err(Error::AlphabetTooSmall { count: tokens.len() });
        }
        let mut index = HashMap::with_capacity(tokens.len());
        let mut max_token_chars = 0;
        for (rank, tok) in tokens.iter().enumerate() {
            if tok.is_empty() {
                return Err(Error::EmptyToken);
            }
            max_token_chars = max_token_chars.max(tok.chars().count());
            if index.insert(tok.clone(), rank).is_some() {
                return Err(Error::DuplicateSymbol { token: tok.clone() });
            }
        }
        Ok(Alphabet { tokens, index, max_token_chars })
    }

    /// Parses an alphabet from text in the given format.
    pub fn parse(source: &str, format: AlphabetFormat) -> Result<Self> {
        if source.trim().is_empty() {
            return Err(Error::AlphabetTooSmall { count: 0 });
        }
        match format {
            AlphabetFormat::SingleLine => {
                let line = source.trim_end_matches(['\n', '\r']);
                Alphabet::new(line.chars().map(String::from))
            }
            AlphabetFormat::TokenPerLine => {
                let mut lines: Vec<&str> =
                    source.lines().map(|l| l.trim_end_matches('\r')).collect();
                while lines.last() == Some(&"") {
                    lines.pop();
                }
                if lines.iter().any(|l| l.is_empty()) {
                    return Err(Error::EmptyToken);
                }
                Alphabet::new(lines)
            }
        }
    }

    /// The classical 26-letter alphabet A..Z.
    pub fn latin() -> Self {
        Alphabet::new(('A'..='Z').map(String::from)).expect("valid built-in")
    }

    /// 36 symbols: A..Z followed by 0..9.
    pub fn alphanumeric() -> Self {
        Alphabet::new(('A'..='Z').chain('0'..='9').map(String::from)).expect("valid built-in")
    }

    /// 53-symbol extended set: letters, digits, `_` standing in for space,
    /// and common punctuation/typographic marks.
    pub fn extended() -> Self {
        let tail =
            ["_", ",", ".", "(", ")", "+", "-", "*", "/", "^", "<", "=", ">", "%", "€", "£", "$"];
        Alphabet::new(
            ('A'..='Z')
                .chain('0'..='9')
                .map(String::from)
                .chain(tail.iter().map(|s| s.to_string())),
        )
        .expect("valid built-in")
    }

    /// Number of symbols N.
    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    /// Token at a given rank. Panics if `rank >= size()`.
    pub fn symbol_at(&self, rank: Rank) -> &str {
        &self.tokens[rank]
    }

    /// Rank of a token, if present.
    pub fn rank(&self, token: &str) -> Option<Rank> {
        self.index.get(token).copied()
    }

    /// Rank of a token, or [`Error::NotInAlphabet`].
    pub fn rank_of(&self, token: &str) -> Result<Rank> {
        self.rank(token).ok_or_else(|| Error::NotInAlphabet { token: token.to_string() })
    }

    /// All tokens in rank order.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }

    /// True when every token is a single character (rendering needs no
    /// separators).
    pub fn is_single_char(&self) -> bool {
        self.max_token_chars == 1
    }

    /// Length in chars of the longest token.
    pub fn max_token_chars(&self) -> usize {
        self.max_token_chars
    }

    /// Greedy longest-token match at the start of `text`.
    ///
    /// Exact match wins; an ASCII-uppercased candidate is tried as a
    /// fallback so lowercase input maps onto uppercase alphabets. Returns
    /// the rank and the number of bytes consumed.
    pub(crate) fn match_prefix(&self, text: &str) -> Option<(Rank, usize)> {
        let mut end = 0;
        let mut ends = Vec::with_capacity(self.max_token_chars);
        for ch in text.chars().take(self.max_token_chars) {
            end += ch.len_utf8();
            ends.push(end);
        }
        for &e in ends.iter().rev() {
            let cand = &text[..e];
            if let Some(&r) = self.index.get(cand) {
                return Some((r, e));
            }
            let upper = cand.to_ascii_uppercase();
            if upper != cand {
                if let Some(&r) = self.index.get(upper.as_str()) {
                    return Some((r, e));
                }
            }
        }
        None
    }

    /// Converts text to ranks, requiring every character to belong to a
    /// token. Matching is greedy (longest token first) with ASCII-uppercase
    /// fallback.
    pub fn tokenize(&self, text: &str) -> Result<Vec<Rank>> {
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            match self.match_prefix(rest) {
                Some((rank, used)) => {
                    out.push(rank);
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

    /// Like [`Alphabet::tokenize`] but silently drops unmatched characters.
    pub fn tokenize_lossy(&self, text: &str) -> Vec<Rank> {
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            match self.match_prefix(rest) {
                Some((rank, used)) => {
                    out.push(rank);
                    rest = &rest[used..];
                }
                None => {
                    let ch = rest.chars().next().unwrap();
                    rest = &rest[ch.len_utf8()..];
                }
            }
        }
        out
    }

    /// Renders ranks back to text by concatenating tokens.
    pub fn render(&self, ranks: &[Rank]) -> String {
        ranks.iter().map(|&r| self.tokens[r].as_str()).collect()
    }

    /// Renders ranks joined by `sep` (useful for multi-char alphabets).
    pub fn render_joined(&self, ranks: &[Rank], sep: &str) -> String {
        ranks.iter().map(|&r| self.tokens[r].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Serializes the token sequence in the given format.
    pub fn serialize(&self, format: AlphabetFormat) -> String {
        match format {
            AlphabetFormat::SingleLine => self.tokens.concat(),
            AlphabetFormat::TokenPerLine => self.tokens.join("\n"),
        }
    }

    /// Checks that every rank is a valid index into this alphabet.
    pub(crate) fn check_ranks(&self, ranks: &[Rank]) -> Result<()> {
        let n = self.size();
        for &r in ranks {
            if r >= n {
                return Err(Error::RankOutOfRange { rank: r, size: n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single_char() {
            write!(f, "{}", self.tokens.concat())
        } else {
            write!(f, "{}", self.tokens.join(" "))
        }
    }
}
