//! Stochastic process generators.
//!
//! All randomness comes from ChaCha8 keyed by a 64-bit seed. Each replicate
//! `r` owns four disjoint ChaCha streams, `4r + k`, with `k` naming the
//! [`Substream`]. Replicates therefore never share random numbers and results
//! do not depend on how replicates are scheduled across threads.

mod ergodic;
mod markov;
mod tightness;

pub use ergodic::{ergodic_ar_like, ergodic_ar_like_stream};
pub use markov::{simulate_pair, simulate_pair_replicate, MarkovPairConfig};
pub use tightness::{
    exhaustive_center_probability, theoretical_center_probability, tightness_block,
    tightness_process_sample, tightness_process_window, TightnessConfig,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Role of a random stream within one replicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Substream {
    /// Shared events affecting both series.
    Common = 0,
    X = 1,
    Y = 2,
    /// Anything else a generator needs (phases, single-series processes).
    Aux = 3,
}

const SUBSTREAMS_PER_REPLICATE: u64 = 4;

/// ChaCha stream id used by `replicate` for `substream`.
pub fn stream_id(replicate: u64, substream: Substream) -> u64 {
    replicate * SUBSTREAMS_PER_REPLICATE + substream as u64
}

/// Generator for `(seed, replicate, substream)`.
pub fn stream_rng(seed: u64, replicate: u64, substream: Substream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(replicate, substream));
    rng
}
