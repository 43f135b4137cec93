use statrs::function::factorial::ln_binomial;

use super::ContingencyTable2x2;
use crate::error::{Error, Result};

/// Relative slack when comparing point probabilities against the observed
/// table's, so tables equal up to rounding are counted as "as extreme".
const RELATIVE_TOLERANCE: f64 = 1e-7;

/// Log probability of `table` under the hypergeometric law with its margins
/// held fixed.
pub fn hypergeometric_log_pmf(table: &ContingencyTable2x2) -> f64 {
    let (r1, r2) = table.row_sums();
    let (c1, _) = table.col_sums();
    ln_binomial(r1, table.c00) + ln_binomial(r2, table.c10) - ln_binomial(table.total(), c1)
}

/// Two-sided Fisher exact test by the point-probability method: sums the
/// probabilities of all same-margin tables no more likely than the observed
/// one.
pub fn fisher_exact_2x2(table: &ContingencyTable2x2) -> Result<f64> {
    let n = table.total();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let (r1, r2) = table.row_sums();
    let (c1, _) = table.col_sums();
    let lo = c1.saturating_sub(r2);
    let hi = r1.min(c1);
    let log_norm = ln_binomial(n, c1);
    let log_p = |a: u64| ln_binomial(r1, a) + ln_binomial(r2, c1 - a) - log_norm;

    let observed = log_p(table.c00);
    let cutoff = observed + RELATIVE_TOLERANCE.ln_1p();
    let p: f64 = (lo..=hi)
        .map(log_p)
        .filter(|&lp| lp <= cutoff)
        .map(f64::exp)
        .sum();
    Ok(p.min(1.0))
}
