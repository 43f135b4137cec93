use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must contain at least one value")]
    EmptySeries,

    #[error("series lengths differ: x has {x}, y has {y}")]
    LengthMismatch { x: usize, y: usize },

    #[error("number of shifts must be at least 1")]
    NoShifts,

    #[error("{n_shifts} shifts leave no segment for series of length {len} (need len - 2N >= 1)")]
    TooManyShifts { n_shifts: usize, len: usize },

    #[error(
        "series length {len} minus segment length {segment} must be a non-negative even number"
    )]
    OddShiftSpan { len: usize, segment: usize },

    #[error("association score at shift {shift} is not finite")]
    NonFiniteScore { shift: i64 },

    #[error("profile has {actual} scores, expected {expected}")]
    ProfileLength { expected: usize, actual: usize },

    #[error("significance level {0} is not in (0, 1)")]
    InvalidAlpha(String),

    #[error("rank statistic {m} outside 1..={max}")]
    RankOutOfRange { m: usize, max: usize },

    #[error("window has {actual} entries, expected {expected}")]
    WindowLength { expected: usize, actual: usize },

    #[error("bound M = {m_bound} outside 1..={max}")]
    BoundOutOfRange { m_bound: usize, max: usize },

    #[error("candidates starting at {start} lack a full +/-{n} neighborhood in a sequence of length {len}")]
    InsufficientContext { start: usize, n: usize, len: usize },

    #[error("non-binary symbol {value} at position {index}")]
    NonBinary { index: usize, value: u32 },

    #[error("segment has zero variance")]
    ZeroVariance,

    #[error("segments need at least {min} values, got {len}")]
    TooShort { min: usize, len: usize },

    #[error("contingency table is empty")]
    EmptyTable,

    #[error("epsilon must be positive and finite")]
    InvalidEpsilon,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("replicate {replicate}: {source}")]
    Replicate {
        replicate: u64,
        #[source]
        source: Box<Error>,
    },
}
