use serde::Serialize;

use super::histogram::{bound_table, BoundTable, CumulativeHistogram, PValueHistogram};
use super::map_replicates;
use crate::assoc::{accumulate_table, fisher_exact_2x2, LogOdds, Pearson, Spearman};
use crate::error::{Error, Result};
use crate::shift::{decide, rank_statistic, shift_profile, Alpha, ShiftProfile, TestOutcome};
use crate::sim::{simulate_pair_replicate, stream_id, MarkovPairConfig, Substream};

/// Built-in association functions, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum AssociationSpec {
    LogOdds { epsilon: f64 },
    Pearson,
    Spearman,
}

impl AssociationSpec {
    pub fn name(&self) -> &'static str {
        match self {
            AssociationSpec::LogOdds { .. } => "log-odds",
            AssociationSpec::Pearson => "pearson",
            AssociationSpec::Spearman => "spearman",
        }
    }

    /// Shift profile of a categorical pair; correlations see the codes as
    /// reals.
    pub fn categorical_profile(
        &self,
        x: &[u32],
        y: &[u32],
        n_shifts: usize,
    ) -> Result<ShiftProfile<f64>> {
        match *self {
            AssociationSpec::LogOdds { epsilon } => {
                shift_profile(x, y, n_shifts, &LogOdds::new(epsilon)?)
            }
            AssociationSpec::Pearson | AssociationSpec::Spearman => {
                let xr: Vec<f64> = x.iter().map(|&v| f64::from(v)).collect();
                let yr: Vec<f64> = y.iter().map(|&v| f64::from(v)).collect();
                self.real_profile(&xr, &yr, n_shifts)
            }
        }
    }

    pub fn real_profile(&self, x: &[f64], y: &[f64], n_shifts: usize) -> Result<ShiftProfile<f64>> {
        match self {
            AssociationSpec::Pearson => shift_profile(x, y, n_shifts, &Pearson),
            AssociationSpec::Spearman => shift_profile(x, y, n_shifts, &Spearman),
            AssociationSpec::LogOdds { .. } => Err(Error::InvalidConfig(
                "log-odds association needs categorical series".into(),
            )),
        }
    }
}

/// Monte Carlo experiment over simulated Markov pairs.
///
/// `pair.seed` is ignored; replicate `r` uses `master_seed` with the streams
/// of replicate `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub replicates: u64,
    pub pair: MarkovPairConfig,
    pub n_shifts: usize,
    pub association: AssociationSpec,
    pub alpha: Alpha,
    pub master_seed: u64,
}

impl ExperimentSpec {
    /// Length-300 binary chains, `N = 19`, log-odds with `epsilon = 0.1`,
    /// `alpha = 0.05`.
    pub fn paper(p_common: f64, replicates: u64, master_seed: u64) -> Self {
        Self {
            replicates,
            pair: MarkovPairConfig::paper(p_common, master_seed),
            n_shifts: 19,
            association: AssociationSpec::LogOdds { epsilon: 0.1 },
            alpha: Alpha::new(1, 20).expect("valid alpha"),
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::InvalidConfig("replicates must be at least 1".into()));
        }
        self.pair.validate()?;
        crate::shift::segment_length(self.pair.length, self.n_shifts)?;
        Ok(())
    }

    fn pair_config(&self) -> MarkovPairConfig {
        MarkovPairConfig {
            seed: self.master_seed,
            ..self.pair
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FailurePolicy {
    /// The first failing replicate (lowest index) aborts the run.
    #[default]
    FailFast,
    /// Failing replicates are dropped and listed in the result.
    SkipAndReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses all available cores.
    pub workers: Option<usize>,
    pub failure: FailurePolicy,
}

impl RunOptions {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers: Some(workers),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateRecord {
    pub replicate: u64,
    /// First ChaCha stream owned by the replicate.
    pub stream: u64,
    pub outcome: TestOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedReplicate {
    pub replicate: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub records: Vec<ReplicateRecord>,
    pub skipped: Vec<SkippedReplicate>,
    pub histogram: CumulativeHistogram,
}

impl ExperimentResult {
    /// Replicates with `m <= threshold`.
    pub fn count_at_most(&self, threshold: usize) -> u64 {
        self.records
            .iter()
            .filter(|r| r.outcome.m <= threshold)
            .count() as u64
    }
}

type Settled<T> = (Vec<(u64, T)>, Vec<SkippedReplicate>);

fn settle<T>(results: Vec<Result<T>>, policy: FailurePolicy) -> Result<Settled<T>> {
    let mut kept = Vec::with_capacity(results.len());
    let mut skipped = Vec::new();
    for (r, res) in (0u64..).zip(results) {
        match res {
            Ok(v) => kept.push((r, v)),
            Err(e) if policy == FailurePolicy::SkipAndReport => skipped.push(SkippedReplicate {
                replicate: r,
                error: e.to_string(),
            }),
            Err(e) => {
                return Err(Error::Replicate {
                    replicate: r,
                    source: Box::new(e),
                })
            }
        }
    }
    Ok((kept, skipped))
}

/// Runs the shift test on every replicate and accumulates the cumulative
/// histogram of `m`.
pub fn run_experiment(spec: &ExperimentSpec, opts: &RunOptions) -> Result<ExperimentResult> {
    spec.validate()?;
    let pair = spec.pair_config();
    let results = map_replicates(spec.replicates, opts.workers, |r| {
        let (x, y) = simulate_pair_replicate(&pair, r)?;
        let profile = spec
            .association
            .categorical_profile(&x, &y, spec.n_shifts)?;
        decide(rank_statistic(&profile), spec.n_shifts, spec.alpha)
    })?;
    let (kept, skipped) = settle(results, opts.failure)?;
    let records: Vec<ReplicateRecord> = kept
        .into_iter()
        .map(|(replicate, outcome)| ReplicateRecord {
            replicate,
            stream: stream_id(replicate, Substream::Common),
            outcome,
        })
        .collect();
    let ranks: Vec<usize> = records.iter().map(|r| r.outcome.m).collect();
    let histogram = CumulativeHistogram::from_ranks(&ranks, spec.n_shifts)?;
    Ok(ExperimentResult {
        records,
        skipped,
        histogram,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FisherBaseline {
    /// `(replicate, p)` in replicate order.
    pub p_values: Vec<(u64, f64)>,
    pub skipped: Vec<SkippedReplicate>,
    pub histogram: PValueHistogram,
}

impl FisherBaseline {
    pub fn fraction_below(&self, level: f64) -> f64 {
        let hits = self.p_values.iter().filter(|(_, p)| *p < level).count();
        hits as f64 / self.p_values.len() as f64
    }
}

/// Fisher exact test on the joint table of each full simulated pair, ignoring
/// autocorrelation. Requires binary chains.
pub fn fisher_baseline_experiment(
    spec: &ExperimentSpec,
    opts: &RunOptions,
) -> Result<FisherBaseline> {
    spec.validate()?;
    if spec.pair.n_states != 2 {
        return Err(Error::InvalidConfig(
            "Fisher baseline needs binary chains".into(),
        ));
    }
    let pair = spec.pair_config();
    let results = map_replicates(spec.replicates, opts.workers, |r| {
        let (x, y) = simulate_pair_replicate(&pair, r)?;
        fisher_exact_2x2(&accumulate_table(&x, &y)?)
    })?;
    let (p_values, skipped) = settle(results, opts.failure)?;
    let histogram = PValueHistogram::from_p_values(p_values.iter().map(|(_, p)| *p));
    Ok(FisherBaseline {
        p_values,
        skipped,
        histogram,
    })
}

/// Compares empirical `P(m <= M)` under an independent null with both
/// reference bounds for every `M` in `m_grid`.
pub fn bound_verification_suite(
    spec: &ExperimentSpec,
    m_grid: &[usize],
    opts: &RunOptions,
) -> Result<BoundTable> {
    if spec.pair.p_common != 0.0 {
        return Err(Error::InvalidConfig(
            "bound verification needs an independent null (p_common = 0)".into(),
        ));
    }
    let result = run_experiment(spec, opts)?;
    bound_table(&result.histogram, m_grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_replicate_is_unit_step() {
        let spec = ExperimentSpec::paper(0.1, 1, 3);
        let result = run_experiment(&spec, &RunOptions::default()).unwrap();
        let m = result.records[0].outcome.m;
        for (i, &c) in result.histogram.cumulative_counts.iter().enumerate() {
            assert_eq!(c, u64::from(i + 1 >= m));
        }
    }

    #[test]
    fn records_are_in_replicate_order() {
        let spec = ExperimentSpec::paper(0.0, 50, 3);
        let result = run_experiment(&spec, &RunOptions::with_workers(4)).unwrap();
        let ids: Vec<u64> = result.records.iter().map(|r| r.replicate).collect();
        assert_eq!(ids, (0..50).collect::<Vec<_>>());
        assert_eq!(result.records[3].stream, 12);
    }

    #[test]
    fn failures_are_fatal_or_skipped() {
        // constant chains (no switching) give zero-variance segments under
        // Pearson whenever the initial state is never left
        let mut spec = ExperimentSpec::paper(0.0, 20, 1);
        spec.pair.p_switch = 0.0;
        spec.association = AssociationSpec::Pearson;
        let err = run_experiment(&spec, &RunOptions::default()).unwrap_err();
        assert!(
            matches!(err, Error::Replicate { replicate: 0, .. }),
            "{err}"
        );
        let opts = RunOptions {
            failure: FailurePolicy::SkipAndReport,
            ..RunOptions::default()
        };
        let result = run_experiment(&spec, &opts).unwrap();
        assert_eq!(result.skipped.len(), 20);
        assert!(result.records.is_empty());
        assert_eq!(result.histogram.replicates, 0);
    }

    #[test]
    fn invalid_specs() {
        let mut spec = ExperimentSpec::paper(0.0, 0, 1);
        assert!(run_experiment(&spec, &RunOptions::default()).is_err());
        spec.replicates = 5;
        spec.n_shifts = 150;
        assert!(run_experiment(&spec, &RunOptions::default()).is_err());
        assert!(run_experiment(
            &ExperimentSpec::paper(0.0, 5, 1),
            &RunOptions::with_workers(0)
        )
        .is_err());
        assert!(bound_verification_suite(
            &ExperimentSpec::paper(0.1, 5, 1),
            &[1],
            &RunOptions::default()
        )
        .is_err());
        let mut multi = ExperimentSpec::paper(0.0, 5, 1);
        multi.pair.n_states = 3;
        assert!(fisher_baseline_experiment(&multi, &RunOptions::default()).is_err());
    }

    #[test]
    fn multi_state_chains_with_spearman() {
        let mut spec = ExperimentSpec::paper(0.2, 40, 9);
        spec.pair.n_states = 4;
        spec.association = AssociationSpec::Spearman;
        let result = run_experiment(&spec, &RunOptions::default()).unwrap();
        assert_eq!(result.histogram.replicates, 40);
    }
}
