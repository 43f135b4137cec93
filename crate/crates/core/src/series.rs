use std::ops::Deref;

use crate::error::{Error, Result};

/// Alphabet kind of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// Non-negative integer state codes.
    Categorical,
    /// Finite real numbers.
    Real,
}

/// A non-empty, ordered, finite series of observations.
///
/// The element type fixes the alphabet, so a single series can never mix
/// categorical codes with reals.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    values: Vec<T>,
}

impl<T> Series<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn into_inner(self) -> Vec<T> {
        self.values
    }
}

impl<T> Deref for Series<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.values
    }
}

impl<T> TryFrom<Vec<T>> for Series<T> {
    type Error = Error;

    fn try_from(values: Vec<T>) -> Result<Self> {
        Self::new(values)
    }
}

/// A parsed series whose kind was decided at parse time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Categorical(Series<u32>),
    Real(Series<f64>),
}

impl AnySeries {
    pub fn kind(&self) -> SeriesKind {
        match self {
            AnySeries::Categorical(_) => SeriesKind::Categorical,
            AnySeries::Real(_) => SeriesKind::Real,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnySeries::Categorical(s) => s.len(),
            AnySeries::Real(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Views the series as reals; categorical codes convert exactly.
    pub fn to_real(&self) -> Series<f64> {
        match self {
            AnySeries::Categorical(s) => Series {
                values: s.iter().map(|&v| f64::from(v)).collect(),
            },
            AnySeries::Real(s) => s.clone(),
        }
    }
}

/// Error from [`parse_series`], carrying the 1-based line number.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Parses one value per line.
///
/// A first line that does not parse as a number is taken to be a header and
/// skipped. Blank lines are ignored. Categorical series accept only
/// non-negative integers; real series accept finite decimal literals.
pub fn parse_series(text: &str, kind: SeriesKind) -> std::result::Result<AnySeries, ParseError> {
    let mut cat = Vec::new();
    let mut real = Vec::new();
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let token = raw.trim().trim_end_matches(',').trim();
        if token.is_empty() {
            continue;
        }
        if std::mem::take(&mut first) && token.parse::<f64>().is_err() {
            continue;
        }
        match kind {
            SeriesKind::Categorical => match token.parse::<u32>() {
                Ok(v) => cat.push(v),
                Err(_) => {
                    return Err(ParseError {
                        line,
                        message: format!(
                            "expected a non-negative integer category, found {token:?}"
                        ),
                    })
                }
            },
            SeriesKind::Real => match token.parse::<f64>() {
                Ok(v) if v.is_finite() => real.push(v),
                _ => {
                    return Err(ParseError {
                        line,
                        message: format!("expected a finite real number, found {token:?}"),
                    })
                }
            },
        }
    }
    let empty = || ParseError {
        line: 0,
        message: "no values found".to_string(),
    };
    match kind {
        SeriesKind::Categorical => Series::new(cat)
            .map(AnySeries::Categorical)
            .map_err(|_| empty()),
        SeriesKind::Real => Series::new(real).map(AnySeries::Real).map_err(|_| empty()),
    }
}

/// Formats a series as one value per line with LF endings.
pub fn format_series<T: std::fmt::Display>(values: &[T]) -> String {
    let mut out = String::with_capacity(values.len() * 4);
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    out
}
