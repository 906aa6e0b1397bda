//! Error type shared by the whole crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("s = {s} and t = {t} must be coprime (gcd = {gcd})")]
    NotCoprime { s: u32, t: u32, gcd: u32 },

    #[error("letter counts #S = {actual_s}, #T = {actual_t} do not match (s, t) = ({s}, {t})")]
    LetterCountMismatch {
        s: u32,
        t: u32,
        actual_s: u64,
        actual_t: u64,
    },

    #[error("not an {s}/{t} ballot word: prefix height negative after letter {position}")]
    NotBallot { s: u32, t: u32, position: usize },

    #[error("pattern must be nonempty")]
    EmptyPattern,

    #[error("both letters must occur (#S >= 1 and #T >= 1)")]
    MissingLetter,

    #[error("integer overflow in {context}")]
    Overflow { context: &'static str },

    #[error("invalid letter {found:?}; expected 'S' or 'T'")]
    BadLetter { found: char },

    #[error("partition rows must be positive and weakly decreasing")]
    MalformedPartition,

    #[error("invalid partition row {text:?}")]
    BadRow { text: String },

    #[error("hook set entries must be distinct positive integers")]
    InvalidHookSet,

    #[error("the given set is not a downset for ({s}, {t})")]
    NotDownset { s: u32, t: u32 },

    #[error("partition contains a hook of length {hook}, so it is not a {hook}-core")]
    HookFound { hook: u64 },

    #[error("greedy path walk did not close; input is not a valid downset")]
    DownsetWalkFailed,

    #[error("minimum prefix height is not unique; counts cannot be coprime")]
    AmbiguousRotation,

    #[error("sample count must be at least 1")]
    ZeroSamples,

    #[error("samples must be nonempty")]
    EmptySamples,

    #[error("tolerance must lie in (0, 1e-6]")]
    BadTolerance,

    #[error("probability must lie in [0, 1)")]
    BadProbability,

    #[error("binary sample stream: {0}")]
    BinaryFormat(&'static str),

    #[error("value does not fit the binary sample stream: {0}")]
    BinaryRange(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
