use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{stream_rng, Substream};
use crate::error::{Error, Result};
use crate::series::Series;

/// Pair of categorical Markov chains with independent and shared resets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkovPairConfig {
    pub length: usize,
    pub n_states: u32,
    /// Per-step probability that each series independently redraws its state.
    pub p_switch: f64,
    /// Per-step probability that both series jump to one shared state.
    pub p_common: f64,
    pub seed: u64,
}

impl MarkovPairConfig {
    /// Binary chains of length 300 with `p_switch = 0.1`.
    pub fn paper(p_common: f64, seed: u64) -> Self {
        Self {
            length: 300,
            n_states: 2,
            p_switch: 0.1,
            p_common,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::InvalidConfig("length must be at least 1".into()));
        }
        if self.n_states < 2 {
            return Err(Error::InvalidConfig("need at least 2 states".into()));
        }
        for (name, p) in [("p_switch", self.p_switch), ("p_common", self.p_common)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {p} is not a probability"
                )));
            }
        }
        Ok(())
    }
}

/// Simulates replicate 0 of `config`.
pub fn simulate_pair(config: &MarkovPairConfig) -> Result<(Series<u32>, Series<u32>)> {
    simulate_pair_replicate(config, 0)
}

/// Simulates one replicate of a pair of chains.
///
/// Initial states are uniform and independent, which is the stationary law.
/// At each later step each series first redraws a uniform state (possibly its
/// current one) with probability `p_switch`, using its own stream; then, with
/// probability `p_common`, both series are overwritten by one shared uniform
/// draw from the common stream.
pub fn simulate_pair_replicate(
    config: &MarkovPairConfig,
    replicate: u64,
) -> Result<(Series<u32>, Series<u32>)> {
    config.validate()?;
    let mut common = stream_rng(config.seed, replicate, Substream::Common);
    let mut rng_x = stream_rng(config.seed, replicate, Substream::X);
    let mut rng_y = stream_rng(config.seed, replicate, Substream::Y);
    let n = config.n_states;

    let mut x = Vec::with_capacity(config.length);
    let mut y = Vec::with_capacity(config.length);
    let mut a = rng_x.random_range(0..n);
    let mut b = rng_y.random_range(0..n);
    x.push(a);
    y.push(b);
    for _ in 1..config.length {
        if rng_x.random_bool(config.p_switch) {
            a = rng_x.random_range(0..n);
        }
        if rng_y.random_bool(config.p_switch) {
            b = rng_y.random_range(0..n);
        }
        if common.random_bool(config.p_common) {
            a = common.random_range(0..n);
            b = a;
        }
        x.push(a);
        y.push(b);
    }
    Ok((Series::new(x)?, Series::new(y)?))
}
