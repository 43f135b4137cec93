use rand::Rng;
use rand_distr::StandardNormal;

use super::{stream_rng, Substream};
use crate::error::{Error, Result};

/// Stationary Gaussian AR(1) sequence with unit variance:
/// `x_t = phi x_{t-1} + sqrt(1 - phi^2) e_t`, `x_0 ~ N(0, 1)`.
///
/// Exponentially mixing for `persistence` in `[0, 1)`, hence ergodic.
pub fn ergodic_ar_like(length: usize, persistence: f64, seed: u64) -> Result<Vec<f64>> {
    ergodic_ar_like_stream(length, persistence, seed, 0, Substream::Aux)
}

/// [`ergodic_ar_like`] drawn from a specific replicate stream.
pub fn ergodic_ar_like_stream(
    length: usize,
    persistence: f64,
    seed: u64,
    replicate: u64,
    substream: Substream,
) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&persistence) {
        return Err(Error::InvalidConfig(format!(
            "persistence {persistence} not in [0, 1)"
        )));
    }
    let mut rng = stream_rng(seed, replicate, substream);
    let innovation_scale = (1.0 - persistence * persistence).sqrt();
    let mut out = Vec::with_capacity(length);
    let mut state: f64 = rng.sample(StandardNormal);
    for _ in 0..length {
        out.push(state);
        let e: f64 = rng.sample(StandardNormal);
        state = persistence * state + innovation_scale * e;
    }
    Ok(out)
}
