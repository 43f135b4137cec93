use serde::Serialize;

use super::binomial_sigma;
use crate::error::{Error, Result};

/// Cumulative counts of the rank statistic with both reference bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulativeHistogram {
    pub n_shifts: usize,
    pub replicates: u64,
    /// `1..=2N+1`.
    pub thresholds: Vec<usize>,
    /// `#{replicates with m <= threshold}`.
    pub cumulative_counts: Vec<u64>,
    /// `M / (N + 1)`, capped at 1.
    pub reference_conservative: Vec<f64>,
    /// `M / (2N + 1)`.
    pub reference_approximate: Vec<f64>,
}

impl CumulativeHistogram {
    pub fn from_ranks(ranks: &[usize], n_shifts: usize) -> Result<Self> {
        let max = 2 * n_shifts + 1;
        let mut counts = vec![0u64; max];
        for &m in ranks {
            if m == 0 || m > max {
                return Err(Error::RankOutOfRange { m, max });
            }
            counts[m - 1] += 1;
        }
        let cumulative_counts = counts
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        let thresholds: Vec<usize> = (1..=max).collect();
        Ok(Self {
            n_shifts,
            replicates: ranks.len() as u64,
            reference_conservative: thresholds
                .iter()
                .map(|&m| (m as f64 / (n_shifts + 1) as f64).min(1.0))
                .collect(),
            reference_approximate: thresholds.iter().map(|&m| m as f64 / max as f64).collect(),
            thresholds,
            cumulative_counts,
        })
    }

    /// `#{m <= threshold}`; zero below 1, all replicates above `2N+1`.
    pub fn count_at(&self, threshold: usize) -> u64 {
        match threshold {
            0 => 0,
            t if t >= self.thresholds.len() => self.replicates,
            t => self.cumulative_counts[t - 1],
        }
    }

    /// `#{m == threshold}`.
    pub fn increment_at(&self, threshold: usize) -> u64 {
        self.count_at(threshold) - self.count_at(threshold.saturating_sub(1))
    }

    pub fn fraction_at(&self, threshold: usize) -> f64 {
        self.count_at(threshold) as f64 / self.replicates as f64
    }
}

pub const P_VALUE_BINS: usize = 20;

/// P-values in 20 bins of width 0.05; `p = 1` falls in the last bin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PValueHistogram {
    pub counts: [u64; P_VALUE_BINS],
}

impl PValueHistogram {
    pub fn from_p_values(p_values: impl IntoIterator<Item = f64>) -> Self {
        let mut counts = [0u64; P_VALUE_BINS];
        for p in p_values {
            let bin = ((p * P_VALUE_BINS as f64).floor() as usize).min(P_VALUE_BINS - 1);
            counts[bin] += 1;
        }
        Self { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(lower, upper)` edges of bin `i`.
    pub fn edges(i: usize) -> (f64, f64) {
        (
            i as f64 / P_VALUE_BINS as f64,
            (i + 1) as f64 / P_VALUE_BINS as f64,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub m: usize,
    pub count: u64,
    pub empirical: f64,
    pub conservative_bound: f64,
    pub approximate_bound: f64,
    /// Three binomial standard errors at the conservative bound.
    pub conservative_slack: f64,
    pub approximate_slack: f64,
    /// Hard failure: empirical exceeds the conservative bound plus slack.
    pub conservative_violated: bool,
    /// Informational only; the approximate bound is not guaranteed.
    pub approximate_violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub n_shifts: usize,
    pub replicates: u64,
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    pub fn conservative_held(&self) -> bool {
        self.rows.iter().all(|r| !r.conservative_violated)
    }

    pub fn conservative_violations(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.conservative_violated)
            .map(|r| r.m)
            .collect()
    }
}

/// Compares `P(m <= M)` with `M / (N+1)` and `M / (2N+1)`, each with three
/// binomial standard errors of slack evaluated at the bound.
pub fn bound_table(histogram: &CumulativeHistogram, m_grid: &[usize]) -> Result<BoundTable> {
    let n = histogram.n_shifts;
    let max = 2 * n + 1;
    if histogram.replicates == 0 {
        return Err(Error::InvalidConfig("no replicates to compare".into()));
    }
    let rows = m_grid
        .iter()
        .map(|&m| {
            if m == 0 || m > max {
                return Err(Error::BoundOutOfRange { m_bound: m, max });
            }
            let count = histogram.count_at(m);
            let empirical = count as f64 / histogram.replicates as f64;
            let conservative_bound = (m as f64 / (n + 1) as f64).min(1.0);
            let approximate_bound = m as f64 / max as f64;
            let conservative_slack = 3.0 * binomial_sigma(conservative_bound, histogram.replicates);
            let approximate_slack = 3.0 * binomial_sigma(approximate_bound, histogram.replicates);
            Ok(BoundRow {
                m,
                count,
                empirical,
                conservative_bound,
                approximate_bound,
                conservative_slack,
                approximate_slack,
                conservative_violated: empirical > conservative_bound + conservative_slack,
                approximate_violated: empirical > approximate_bound + approximate_slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable {
        n_shifts: n,
        replicates: histogram.replicates,
        rows,
    })
}
