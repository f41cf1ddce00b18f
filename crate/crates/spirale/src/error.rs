//! Error type shared by every module of the crate.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the library.
///
/// [`Error::code`] yields a stable machine-readable name for each variant;
/// the CLI prints it as `ERROR <code>: <message>`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("alphabet needs at least 2 symbols, found {count}")]
    AlphabetTooSmall { count: usize },

    #[error("duplicate symbol {token:?} in alphabet")]
    DuplicateSymbol { token: String },

    #[error("empty token in alphabet source")]
    EmptyToken,

    #[error("symbol {token:?} is not in the alphabet")]
    NotInAlphabet { token: String },

    #[error("rank {rank} out of range for alphabet of size {size}")]
    RankOutOfRange { rank: usize, size: usize },

    #[error("key must contain at least one symbol")]
    EmptyKey,

    #[error("keys must all have the same length: expected {expected}, found {found}")]
    KeyLengthMismatch { expected: usize, found: usize },

    #[error("key set was built for an alphabet of {expected} symbols, got {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("message must contain at least one symbol")]
    EmptyMessage,

    #[error("no alphabet symbols left after normalization")]
    ResultEmpty,

    #[error("invalid lags: k = {k}, d = {d} (need 0 < d < k and k != 2d)")]
    InvalidLag { k: usize, d: usize },

    #[error("seed length {found} does not match lag k = {expected}")]
    BadSeedLength { expected: usize, found: usize },

    #[error("sequence of length {length} is too short")]
    TooShort { length: usize },

    #[error("lag {lag} is invalid for a sequence of length {length}")]
    BadLag { lag: usize, length: usize },

    #[error("position {position} outside valid range 1..={bound}")]
    BadPosition { position: usize, bound: usize },

    #[error("extract row length {found} does not match expected {expected}")]
    BadExtractLength { expected: usize, found: usize },

    #[error("high/low letter sets differ in size: {high} vs {low}")]
    SetSizeMismatch { high: usize, low: usize },

    #[error("search space of {required} keysets exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
}

impl Error {
    /// Stable error code for scripting against the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::AlphabetTooSmall { .. } => "AlphabetTooSmall",
            Error::DuplicateSymbol { .. } => "DuplicateSymbol",
            Error::EmptyToken => "EmptyToken",
            Error::NotInAlphabet { .. } => "NotInAlphabet",
            // Out-of-range ranks are the typed-sequence form of the same fault.
            Error::RankOutOfRange { .. } => "NotInAlphabet",
            Error::EmptyKey => "EmptyKey",
            Error::KeyLengthMismatch { .. } => "KeyLengthMismatch",
            Error::AlphabetMismatch { .. } => "AlphabetMismatch",
            Error::EmptyMessage => "EmptyMessage",
            Error::ResultEmpty => "ResultEmpty",
            Error::InvalidLag { .. } => "InvalidLag",
            Error::BadSeedLength { .. } => "BadSeedLength",
            Error::TooShort { .. } => "TooShort",
            Error::BadLag { .. } => "BadLag",
            Error::BadPosition { .. } => "BadPosition",
            Error::BadExtractLength { .. } => "BadExtractLength",
            Error::SetSizeMismatch { .. } => "SetSizeMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
        }
    }
}
