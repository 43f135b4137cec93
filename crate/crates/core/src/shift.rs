//! The shift-test engine: shift profile, rank statistic and decisions.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Float;
use serde::{Serialize, Serializer};

use crate::assoc::Association;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Association scores `V_s` for every shift `s = -N..=N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftProfile<F> {
    scores: Vec<F>,
    n_shifts: usize,
    segment_length: usize,
}

impl<F: Scalar> ShiftProfile<F> {
    /// Wraps precomputed scores ordered from shift `-N` to `+N`.
    pub fn from_scores(scores: Vec<F>, n_shifts: usize, segment_length: usize) -> Result<Self> {
        if n_shifts == 0 {
            return Err(Error::NoShifts);
        }
        if segment_length == 0 {
            return Err(Error::TooManyShifts {
                n_shifts,
                len: 2 * n_shifts,
            });
        }
        if scores.len() != 2 * n_shifts + 1 {
            return Err(Error::ProfileLength {
                expected: 2 * n_shifts + 1,
                actual: scores.len(),
            });
        }
        if let Some(i) = scores.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteScore {
                shift: i as i64 - n_shifts as i64,
            });
        }
        Ok(Self {
            scores,
            n_shifts,
            segment_length,
        })
    }

    pub fn scores(&self) -> &[F] {
        &self.scores
    }

    pub fn n_shifts(&self) -> usize {
        self.n_shifts
    }

    pub fn segment_length(&self) -> usize {
        self.segment_length
    }

    /// Score at the unshifted alignment, `V_0`.
    pub fn center(&self) -> F {
        self.scores[self.n_shifts]
    }

    /// Score at shift `s`, or `None` outside `-N..=N`.
    pub fn at(&self, shift: i64) -> Option<F> {
        let idx = shift + self.n_shifts as i64;
        usize::try_from(idx)
            .ok()
            .and_then(|i| self.scores.get(i).copied())
    }

    /// `(shift, score)` pairs from `-N` to `+N`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, F)> + '_ {
        let n = self.n_shifts as i64;
        self.scores
            .iter()
            .enumerate()
            .map(move |(i, &v)| (i as i64 - n, v))
    }

    pub fn rank_statistic(&self) -> usize {
        rank_statistic(self)
    }
}

/// Segment length `D = T - 2N` left after reserving `N` steps on each side.
pub fn segment_length(len: usize, n_shifts: usize) -> Result<usize> {
    if n_shifts == 0 {
        return Err(Error::NoShifts);
    }
    match len.checked_sub(2 * n_shifts) {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::TooManyShifts { n_shifts, len }),
    }
}

/// Number of shifts `N = (T - D) / 2` for a requested segment length.
pub fn shifts_for_segment(len: usize, segment: usize) -> Result<usize> {
    match len.checked_sub(segment) {
        Some(span) if span % 2 == 0 && segment >= 1 => {
            let n = span / 2;
            if n == 0 {
                Err(Error::NoShifts)
            } else {
                Ok(n)
            }
        }
        _ => Err(Error::OddShiftSpan { len, segment }),
    }
}

/// Scores the central segment `x[N..T-N]` against `y[s+N..s+T-N]` for every
/// shift `s` in `-N..=N`.
pub fn shift_profile<X, Y, A>(
    x: &[X],
    y: &[Y],
    n_shifts: usize,
    v: &A,
) -> Result<ShiftProfile<A::Score>>
where
    A: Association<X, Y> + ?Sized,
{
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            x: x.len(),
            y: y.len(),
        });
    }
    let d = segment_length(x.len(), n_shifts)?;
    let center = &x[n_shifts..n_shifts + d];
    let scores = (0..=2 * n_shifts)
        .map(|offset| {
            let shift = offset as i64 - n_shifts as i64;
            let score = v.evaluate(center, &y[offset..offset + d])?;
            if score.is_finite() {
                Ok(score)
            } else {
                Err(Error::NonFiniteScore { shift })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShiftProfile {
        scores,
        n_shifts,
        segment_length: d,
    })
}

/// `m`: the number of shifts, including zero, scoring at least `V_0`.
pub fn rank_statistic<F: Scalar>(profile: &ShiftProfile<F>) -> usize {
    let v0 = profile.center();
    profile.scores.iter().filter(|&&v| v >= v0).count()
}

/// A significance level held as an exact fraction in `(0, 1)`.
///
/// Rejection thresholds compare the integer `m` against `alpha * (N + 1)`
/// exactly, so boundary cases such as `1 <= 0.05 * 20` are never lost to
/// floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alpha(Ratio<u64>);

impl Alpha {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 || numer == 0 || numer >= denom {
            return Err(Error::InvalidAlpha(format!("{numer}/{denom}")));
        }
        Ok(Self(Ratio::new(numer, denom)))
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// Whether `count <= alpha * scale`, evaluated exactly.
    pub fn admits(&self, count: usize, scale: usize) -> bool {
        count as u128 * *self.0.denom() as u128 <= *self.0.numer() as u128 * scale as u128
    }
}

impl FromStr for Alpha {
    type Err = Error;

    /// Accepts decimals (`0.05`), fractions (`1/20`) and exponent forms
    /// (`5e-2`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAlpha(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = n.trim().parse::<u64>().map_err(|_| bad())?;
            let d = d.trim().parse::<u64>().map_err(|_| bad())?;
            return Alpha::new(n, d).map_err(|_| bad());
        }
        let (mantissa, exp) = match s.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part
                .chars()
                .chain(frac_part.chars())
                .all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let scale = frac_part.len() as i32 - exp;
        let mut numer: u128 = digits.parse().map_err(|_| bad())?;
        let mut denom: u128 = 1;
        let pow = 10u128.checked_pow(scale.unsigned_abs()).ok_or_else(bad)?;
        if scale >= 0 {
            denom = pow;
        } else {
            numer = numer.checked_mul(pow).ok_or_else(bad)?;
        }
        let g = gcd(numer, denom);
        let (numer, denom) = (numer / g.max(1), denom / g.max(1));
        let numer = u64::try_from(numer).map_err(|_| bad())?;
        let denom = u64::try_from(denom).map_err(|_| bad())?;
        Alpha::new(numer, denom).map_err(|_| bad())
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    /// Uses the shortest decimal that round-trips to `value`, so `0.05`
    /// becomes exactly `1/20`.
    fn try_from(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidAlpha(value.to_string()));
        }
        value.to_string().parse()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}

/// Decision and p-value bounds for one test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestOutcome {
    pub m: usize,
    pub n_shifts: usize,
    /// `min(m / (N + 1), 1)`.
    pub p_conservative: f64,
    /// `m / (2N + 1)`.
    pub p_approximate: f64,
    pub alpha: Alpha,
    pub reject_conservative: bool,
    pub reject_approximate: bool,
}

impl TestOutcome {
    pub fn p_conservative_exact(&self) -> Ratio<u64> {
        Ratio::new(self.m as u64, self.n_shifts as u64 + 1).min(Ratio::from_integer(1))
    }

    pub fn p_approximate_exact(&self) -> Ratio<u64> {
        Ratio::new(self.m as u64, 2 * self.n_shifts as u64 + 1)
    }
}

/// Applies the conservative (`m <= alpha (N+1)`) and approximate
/// (`m <= alpha (2N+1)`) rejection rules.
pub fn decide(m: usize, n_shifts: usize, alpha: Alpha) -> Result<TestOutcome> {
    if n_shifts == 0 {
        return Err(Error::NoShifts);
    }
    let max = 2 * n_shifts + 1;
    if m == 0 || m > max {
        return Err(Error::RankOutOfRange { m, max });
    }
    Ok(TestOutcome {
        m,
        n_shifts,
        p_conservative: (m as f64 / (n_shifts + 1) as f64).min(1.0),
        p_approximate: m as f64 / max as f64,
        alpha,
        reject_conservative: alpha.admits(m, n_shifts + 1),
        reject_approximate: alpha.admits(m, max),
    })
}

/// Profile, rank statistic and decision in one call.
pub fn run_test<X, Y, A>(
    x: &[X],
    y: &[Y],
    n_shifts: usize,
    v: &A,
    alpha: Alpha,
) -> Result<(ShiftProfile<A::Score>, TestOutcome)>
where
    A: Association<X, Y> + ?Sized,
{
    let profile = shift_profile(x, y, n_shifts, v)?;
    let outcome = decide(rank_statistic(&profile), n_shifts, alpha)?;
    Ok((profile, outcome))
}
