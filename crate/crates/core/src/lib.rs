//! Shift test for independence of two autocorrelated time series.
//!
//! The central segment of `x` is scored against every shift `s = -N..=N` of
//! `y` with a pluggable [`Association`] function. The rank statistic `m`
//! counts shifts scoring at least as high as the unshifted pair; the test is
//! conservative when it rejects for `m <= alpha * (N + 1)` and approximate
//! (valid as `N` grows) when it rejects for `m <= alpha * (2N + 1)`.
//!
//! Scores are generic over a floating-point [`Scalar`]; the `*64` / `*32`
//! aliases below name the common instantiations.

pub mod assoc;
pub mod error;
pub mod harness;
pub mod local_max;
pub mod scalar;
pub mod series;
pub mod shift;
pub mod sim;

pub use assoc::{Association, ContingencyTable2x2, LogOdds, Pearson, Spearman};
pub use error::{Error, Result};
pub use local_max::{count_local_maxima_in_window, is_local_maximum};
pub use scalar::Scalar;
pub use series::{Series, SeriesKind};
pub use shift::{
    decide, rank_statistic, run_test, shift_profile, Alpha, ShiftProfile, TestOutcome,
};

/// Shift profile with double-precision scores.
pub type ShiftProfile64 = ShiftProfile<f64>;
/// Shift profile with single-precision scores.
pub type ShiftProfile32 = ShiftProfile<f32>;
/// Real-valued series in double precision.
pub type RealSeries = Series<f64>;
/// Real-valued series in single precision.
pub type RealSeries32 = Series<f32>;
/// Categorical series of integer state codes.
pub type CategoricalSeries = Series<u32>;
/// Regularized log-odds association producing `f64` scores.
pub type LogOdds64 = LogOdds<f64>;
