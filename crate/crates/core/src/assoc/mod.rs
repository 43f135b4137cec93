//! Association functions scoring how strongly two equal-length segments are
//! related, plus the Fisher exact baseline.

mod correlation;
mod fisher;
mod table;

pub use correlation::{mid_ranks, pearson_v, spearman_v, Pearson, Spearman};
pub use fisher::{fisher_exact_2x2, hypergeometric_log_pmf};
pub use table::{accumulate_table, log_odds_v, ContingencyTable2x2, LogOdds, DEFAULT_EPSILON};

use crate::error::Result;
use crate::scalar::Scalar;

/// Scores the association of two equal-length segments; larger means more
/// associated.
///
/// Any `Fn(&[X], &[Y]) -> S` closure is an association function, so callers
/// can plug in their own measure without a wrapper type.
pub trait Association<X, Y = X> {
    type Score: Scalar;

    fn evaluate(&self, x: &[X], y: &[Y]) -> Result<Self::Score>;
}

impl<X, Y, S, F> Association<X, Y> for F
where
    F: Fn(&[X], &[Y]) -> S,
    S: Scalar,
{
    type Score = S;

    fn evaluate(&self, x: &[X], y: &[Y]) -> Result<S> {
        Ok(self(x, y))
    }
}
