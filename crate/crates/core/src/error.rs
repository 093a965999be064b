use thiserror::Error;

/// Errors produced by the cooling-process library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid character {found:?} at position {position} (expected '1' or '2')")]
    InvalidLetter { position: usize, found: char },

    #[error("odd length {0}: a configuration must have even length")]
    OddLength(usize),

    #[error("unbalanced word: {ones} letters '1' but {twos} letters '2'")]
    Unbalanced { ones: usize, twos: usize },

    #[error("the variant is undefined on the empty configuration")]
    EmptyConfiguration,

    #[error("alpha must lie strictly inside (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("no flip at position {position}: letters are equal")]
    EqualLetters { position: usize },

    #[error("flip position {position} out of range for length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("length {len} exceeds the enumeration bound {max}")]
    LengthTooLarge { len: usize, max: usize },

    #[error("length must be at least {min}, got {len}")]
    LengthTooSmall { len: usize, min: usize },

    #[error("step cap of {cap} exceeded before reaching a ground state")]
    StepCapExceeded { cap: u64 },

    #[error("linear solve at energy level {level} left residual {residual:e} above {tolerance:e}")]
    ResidualTooLarge {
        level: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("singular system at energy level {level}")]
    SingularLevel { level: usize },

    #[error("coefficient identity failed at n={n}: brute force {brute}, closed form {closed}")]
    CoefficientMismatch {
        n: usize,
        brute: String,
        closed: String,
    },

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("CSV error: {0}")]
    Csv(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
