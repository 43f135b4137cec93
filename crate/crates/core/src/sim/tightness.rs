use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{stream_rng, Substream};
use crate::error::{Error, Result};
use crate::local_max::is_local_maximum;

/// Parameters of the periodic block process that attains the conservative
/// bound up to `(M - 1) / (K (N + 1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessConfig {
    pub m_bound: usize,
    pub n_shifts: usize,
    pub k_copies: usize,
    pub seed: u64,
}

impl TightnessConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_shifts == 0 {
            return Err(Error::NoShifts);
        }
        if self.m_bound == 0 || self.m_bound > self.n_shifts + 1 {
            return Err(Error::BoundOutOfRange {
                m_bound: self.m_bound,
                max: self.n_shifts + 1,
            });
        }
        if self.k_copies == 0 {
            return Err(Error::InvalidConfig("k_copies must be at least 1".into()));
        }
        Ok(())
    }

    /// Period `K (N + 1)` of the process.
    pub fn period(&self) -> usize {
        self.k_copies * (self.n_shifts + 1)
    }
}

/// One period of the block sequence: within each of the `K` blocks of
/// length `N + 1` the first `M` entries count upward (continuing from the
/// previous block) and the rest are zero.
pub fn tightness_block(config: &TightnessConfig) -> Result<Vec<f64>> {
    config.validate()?;
    let width = config.n_shifts + 1;
    Ok((0..config.period())
        .map(|t| {
            let (block, offset) = (t / width, t % width);
            if offset < config.m_bound {
                (1 + offset + config.m_bound * block) as f64
            } else {
                0.0
            }
        })
        .collect())
}

/// `length` values of the periodic process starting at `phase`:
/// `V_t = W[(t + phase) mod K(N+1)]`.
pub fn tightness_process_window(
    config: &TightnessConfig,
    phase: usize,
    length: usize,
) -> Result<Vec<f64>> {
    let block = tightness_block(config)?;
    let period = block.len();
    Ok((0..length).map(|t| block[(t + phase) % period]).collect())
}

/// A window of the stationary process, with the phase drawn uniformly from
/// `[0, K(N+1))` using the config's seed.
pub fn tightness_process_sample(config: &TightnessConfig, length: usize) -> Result<Vec<f64>> {
    config.validate()?;
    let phase = stream_rng(config.seed, 0, Substream::Aux).random_range(0..config.period());
    tightness_process_window(config, phase, length)
}

/// Probability that time 0 is an `(M, N)`-local maximum, computed by
/// enumerating every phase of the stationary process.
pub fn exhaustive_center_probability(config: &TightnessConfig) -> Result<Ratio<u64>> {
    let period = config.period();
    let n = config.n_shifts;
    let mut hits = 0u64;
    for phase in 0..period {
        // window covers t = -N..=N, i.e. starts N steps before phase
        let start = (phase + period * (n / period + 1) - n) % period;
        let window = tightness_process_window(config, start, 2 * n + 1)?;
        if is_local_maximum(&window, config.m_bound)? {
            hits += 1;
        }
    }
    Ok(Ratio::new(hits, period as u64))
}

/// `(MK - M + 1) / (K (N + 1))`.
pub fn theoretical_center_probability(config: &TightnessConfig) -> Result<Ratio<u64>> {
    config.validate()?;
    let (m, k) = (config.m_bound as u64, config.k_copies as u64);
    Ok(Ratio::new(m * k - m + 1, config.period() as u64))
}
