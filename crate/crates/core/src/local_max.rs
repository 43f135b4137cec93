//! Local maxima of a real sequence: `t` is an `(M, N)`-local maximum when at
//! most `M` values within `N` steps of `t` (itself included) are `>= x_t`.

use crate::error::{Error, Result};

/// Tests the center of a `2N + 1` window against bound `m_bound`.
pub fn is_local_maximum<T: PartialOrd>(window: &[T], m_bound: usize) -> Result<bool> {
    if window.len().is_multiple_of(2) {
        return Err(Error::WindowLength {
            expected: window.len() + 1,
            actual: window.len(),
        });
    }
    if m_bound == 0 || m_bound > window.len() {
        return Err(Error::BoundOutOfRange {
            m_bound,
            max: window.len(),
        });
    }
    let center = &window[window.len() / 2];
    Ok(window.iter().filter(|v| *v >= center).count() <= m_bound)
}

/// Counts `(M, N)`-local maxima among positions `start..=start + N`.
///
/// Every candidate needs its full `±N` neighborhood inside `sequence`.
pub fn count_local_maxima_in_window<T: PartialOrd>(
    sequence: &[T],
    start: usize,
    m_bound: usize,
    n: usize,
) -> Result<usize> {
    if start < n || start + 2 * n + 1 > sequence.len() {
        return Err(Error::InsufficientContext {
            start,
            n,
            len: sequence.len(),
        });
    }
    (start..=start + n).try_fold(0, |count, t| {
        is_local_maximum(&sequence[t - n..=t + n], m_bound).map(|hit| count + usize::from(hit))
    })
}
