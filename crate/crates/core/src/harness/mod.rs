//! Parallel Monte Carlo experiments: the categorical-series reproduction,
//! bound verification and the large-`N` size probe.
//!
//! Replicate `r` draws only from the streams of replicate `r` (see
//! [`crate::sim`]) and results are merged in replicate order, so every output
//! is identical for any worker count.

mod asymptotic;
mod experiment;
mod fig2;
mod histogram;
mod report;

pub use asymptotic::{approximate_size_experiment, AsymptoticSpec, SizeProbe, SizeRow};
pub use experiment::{
    bound_verification_suite, fisher_baseline_experiment, run_experiment, AssociationSpec,
    ExperimentResult, ExperimentSpec, FailurePolicy, FisherBaseline, ReplicateRecord, RunOptions,
    SkippedReplicate,
};
pub use fig2::{
    reproduce_fig2, ConditionSummary, Fig2Output, Fig2Summary, Verdict, FIG2C_SEED,
    LOW_POWER_REPLICATES,
};
pub use histogram::{
    bound_table, BoundRow, BoundTable, CumulativeHistogram, PValueHistogram, P_VALUE_BINS,
};
pub use report::{bound_table_csv, records_csv};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Binomial standard error of a proportion `p` estimated from `n` trials.
pub fn binomial_sigma(p: f64, n: u64) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

fn thread_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        if w == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        builder = builder.num_threads(w);
    }
    builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))
}

/// Runs `f` for replicates `0..replicates` and returns results in order.
fn map_replicates<T, F>(replicates: u64, workers: Option<usize>, f: F) -> Result<Vec<Result<T>>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    let pool = thread_pool(workers)?;
    Ok(pool.install(|| (0..replicates).into_par_iter().map(f).collect()))
}
