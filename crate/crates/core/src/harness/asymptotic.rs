use serde::Serialize;

use super::{binomial_sigma, map_replicates};
use crate::assoc::Pearson;
use crate::error::{Error, Result};
use crate::shift::{rank_statistic, shift_profile, Alpha, ShiftProfile};
use crate::sim::{ergodic_ar_like_stream, Substream};

/// Source of a stationary, ergodic score sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SizeProbe {
    /// The scores `V_s` themselves form an AR(1) sequence.
    StationaryScores { persistence: f64 },
    /// Independent AR(1) series scored with Pearson correlation over
    /// segments of `segment_length`.
    IndependentSeries {
        persistence: f64,
        segment_length: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticSpec {
    pub replicates: u64,
    pub n_shifts: usize,
    pub probe: SizeProbe,
    pub alphas: Vec<Alpha>,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeRow {
    pub alpha: Alpha,
    pub rejections: u64,
    pub replicates: u64,
    pub rate: f64,
    pub sigma: f64,
    /// `alpha + 3 sigma`.
    pub limit: f64,
    pub within_limit: bool,
}

/// Empirical rejection rate of the approximate rule `m <= alpha (2N+1)` under
/// an independent null, for each requested level.
pub fn approximate_size_experiment(
    spec: &AsymptoticSpec,
    workers: Option<usize>,
) -> Result<Vec<SizeRow>> {
    if spec.replicates == 0 {
        return Err(Error::InvalidConfig("replicates must be at least 1".into()));
    }
    if spec.n_shifts == 0 {
        return Err(Error::NoShifts);
    }
    let n = spec.n_shifts;
    let seed = spec.master_seed;
    let results = map_replicates(spec.replicates, workers, |r| match spec.probe {
        SizeProbe::StationaryScores { persistence } => {
            let scores = ergodic_ar_like_stream(2 * n + 1, persistence, seed, r, Substream::Aux)?;
            Ok(rank_statistic(&ShiftProfile::from_scores(scores, n, 1)?))
        }
        SizeProbe::IndependentSeries {
            persistence,
            segment_length,
        } => {
            let len = 2 * n + segment_length;
            let x = ergodic_ar_like_stream(len, persistence, seed, r, Substream::X)?;
            let y = ergodic_ar_like_stream(len, persistence, seed, r, Substream::Y)?;
            Ok(rank_statistic(&shift_profile(&x, &y, n, &Pearson)?))
        }
    })?;
    let ranks = results
        .into_iter()
        .zip(0u64..)
        .map(|(res, r)| {
            res.map_err(|e| Error::Replicate {
                replicate: r,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    Ok(spec
        .alphas
        .iter()
        .map(|&alpha| {
            let rejections = ranks
                .iter()
                .filter(|&&m| alpha.admits(m, 2 * n + 1))
                .count() as u64;
            let rate = rejections as f64 / spec.replicates as f64;
            let sigma = binomial_sigma(alpha.to_f64(), spec.replicates);
            let limit = alpha.to_f64() + 3.0 * sigma;
            SizeRow {
                alpha,
                rejections,
                replicates: spec.replicates,
                rate,
                sigma,
                limit,
                within_limit: rate <= limit,
            }
        })
        .collect())
}
