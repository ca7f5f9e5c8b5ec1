use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty bit string")]
    Empty,
    #[error("invalid character {0:?} in bit string")]
    InvalidBitChar(char),
    #[error("invalid character {0:?} in ternary string (expected 1, 0 or N)")]
    InvalidTernaryChar(char),
    #[error("ternary entry {0} not in {{-1, 0, 1}}")]
    InvalidTernaryEntry(i8),
    #[error("the all-zero sequence is not allowed")]
    AllZeroSequence,
    #[error("period must be at least 2, got {0}")]
    PeriodTooShort(usize),
    #[error("shift {tau} out of range for period {period}")]
    TauOutOfRange { tau: i64, period: usize },
    #[error("value {0} out of range for trial division (need 2 <= v < 2^63)")]
    FactorOutOfRange(u64),
    #[error("degree {degree} outside supported range {min}..={max}")]
    DegreeOutOfRange { degree: u32, min: u32, max: u32 },
    #[error("degree range {min}..={max} is empty")]
    EmptyDegreeRange { min: u32, max: u32 },
    #[error("cannot parse polynomial {0:?}")]
    PolyParse(String),
    #[error("polynomial is not primitive: {0}")]
    NotPrimitive(String),
    #[error("initial state has length {got}, expected {expected}")]
    InitStateLength { expected: usize, got: usize },
    #[error("initial state must not be all-zero")]
    AllZeroState,
    #[error("generated sequence has least period {found}, expected {expected}")]
    PeriodNotExact { expected: usize, found: usize },
    #[error("not an m-sequence under shift-and-add (tau = {0})")]
    NotShiftAndAdd(usize),
    #[error("horizon {horizon} too small for period {period} (need at least {min})")]
    HorizonTooSmall { horizon: usize, period: usize, min: usize },
    #[error("2-adic difference not periodic within horizon {0}")]
    PeriodicityNotDetected(usize),
    #[error("oracle disagreement at tau {tau}: {detail}")]
    OracleMismatch { tau: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
