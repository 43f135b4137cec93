use super::Association;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_lengths(x_len: usize, y_len: usize) -> Result<()> {
    if x_len != y_len {
        return Err(Error::LengthMismatch { x: x_len, y: y_len });
    }
    if x_len < 2 {
        return Err(Error::TooShort { min: 2, len: x_len });
    }
    Ok(())
}

/// Sample Pearson correlation.
///
/// Accumulates means and co-moments in a single streaming pass, so large
/// offsets in the data do not cancel catastrophically.
pub fn pearson_v<F: Scalar>(x: &[F], y: &[F]) -> Result<F> {
    check_lengths(x.len(), y.len())?;
    let (mut mx, mut my) = (F::zero(), F::zero());
    let (mut sxx, mut syy, mut sxy) = (F::zero(), F::zero(), F::zero());
    for (i, (&a, &b)) in x.iter().zip(y).enumerate() {
        let n = F::from_count(i + 1);
        let dx = a - mx;
        let dy = b - my;
        mx = mx + dx / n;
        my = my + dy / n;
        sxx = sxx + dx * (a - mx);
        syy = syy + dy * (b - my);
        sxy = sxy + dx * (b - my);
    }
    if sxx <= F::zero() || syy <= F::zero() {
        return Err(Error::ZeroVariance);
    }
    let r = sxy / (sxx.sqrt() * syy.sqrt());
    Ok(r.max(-F::one()).min(F::one()))
}

/// Ranks starting at 1, with tied values sharing the average of their ranks.
pub fn mid_ranks<F: Scalar>(values: &[F]) -> Vec<F> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![F::zero(); values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let rank = F::from_count(start + 1 + end) / F::from_count(2);
        for &idx in &order[start..end] {
            ranks[idx] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman correlation: Pearson correlation of mid-ranks.
pub fn spearman_v<F: Scalar>(x: &[F], y: &[F]) -> Result<F> {
    check_lengths(x.len(), y.len())?;
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig("non-finite value in segment".into()));
    }
    pearson_v(&mid_ranks(x), &mid_ranks(y))
}

/// Pearson correlation association for real series.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pearson;

/// Spearman rank correlation association for real series.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Spearman;

impl<F: Scalar> Association<F> for Pearson {
    type Score = F;

    fn evaluate(&self, x: &[F], y: &[F]) -> Result<F> {
        pearson_v(x, y)
    }
}

impl<F: Scalar> Association<F> for Spearman {
    type Score = F;

    fn evaluate(&self, x: &[F], y: &[F]) -> Result<F> {
        spearman_v(x, y)
    }
}
