use serde::{Deserialize, Serialize};

use super::Association;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_EPSILON: f64 = 0.1;

/// Joint counts of binary values: `cij = #{t : x_t = i, y_t = j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ContingencyTable2x2 {
    pub c00: u64,
    pub c01: u64,
    pub c10: u64,
    pub c11: u64,
}

impl ContingencyTable2x2 {
    pub fn new(c00: u64, c01: u64, c10: u64, c11: u64) -> Self {
        Self { c00, c01, c10, c11 }
    }

    pub fn total(&self) -> u64 {
        self.c00 + self.c01 + self.c10 + self.c11
    }

    /// Row sums `(c00 + c01, c10 + c11)`.
    pub fn row_sums(&self) -> (u64, u64) {
        (self.c00 + self.c01, self.c10 + self.c11)
    }

    /// Column sums `(c00 + c10, c01 + c11)`.
    pub fn col_sums(&self) -> (u64, u64) {
        (self.c00 + self.c10, self.c01 + self.c11)
    }
}

/// Counts joint occurrences of binary symbols over two equal-length segments.
pub fn accumulate_table(x: &[u32], y: &[u32]) -> Result<ContingencyTable2x2> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            x: x.len(),
            y: y.len(),
        });
    }
    let mut counts = [0u64; 4];
    for (i, (&a, &b)) in x.iter().zip(y).enumerate() {
        if a > 1 {
            return Err(Error::NonBinary { index: i, value: a });
        }
        if b > 1 {
            return Err(Error::NonBinary { index: i, value: b });
        }
        counts[(2 * a + b) as usize] += 1;
    }
    Ok(ContingencyTable2x2::new(
        counts[0], counts[1], counts[2], counts[3],
    ))
}

/// Natural log of the odds ratio after adding `epsilon` to every cell.
pub fn log_odds_v<F: Scalar>(table: &ContingencyTable2x2, epsilon: F) -> F {
    let cell = |c: u64| epsilon + F::from_u64(c).expect("count representable as float");
    ((cell(table.c00) * cell(table.c11)) / (cell(table.c01) * cell(table.c10))).ln()
}

/// Regularized log-odds association for binary categorical series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogOdds<F = f64> {
    epsilon: F,
}

impl<F: Scalar> LogOdds<F> {
    pub fn new(epsilon: F) -> Result<Self> {
        if !(epsilon > F::zero() && epsilon.is_finite()) {
            return Err(Error::InvalidEpsilon);
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> F {
        self.epsilon
    }
}

impl<F: Scalar> Default for LogOdds<F> {
    fn default() -> Self {
        Self {
            epsilon: F::from_f64(DEFAULT_EPSILON).expect("epsilon representable"),
        }
    }
}

impl<F: Scalar> Association<u32> for LogOdds<F> {
    type Score = F;

    fn evaluate(&self, x: &[u32], y: &[u32]) -> Result<F> {
        accumulate_table(x, y).map(|t| log_odds_v(&t, self.epsilon))
    }
}
