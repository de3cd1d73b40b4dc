//! Moment-matched zero-truncated Poisson rates for frequency-of-frequencies tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::FreqOfFreqTable;
use crate::distributions::ztp_mean;
use crate::error::{domain, Error, Result};
use crate::roots::{safeguarded_newton, Tolerance};

/// The rate `lambda >= 0` with `lambda / (1 - e^-lambda) = mean`.
///
/// The root lies in `[max(0, mean - 1), mean]`; `mean = 1` gives `lambda = 0`.
pub fn ztp_lambda_from_mean(mean: f64) -> Result<f64> {
    if mean.is_nan() || mean < 1.0 || mean.is_infinite() {
        return domain(format!("a zero-truncated Poisson mean is finite and >= 1, got {mean}"));
    }
    if mean == 1.0 {
        return Ok(0.0);
    }
    let f_df = |l: f64| {
        if l == 0.0 {
            return (1.0 - mean, 0.5);
        }
        let q = -(-l).exp_m1();
        let e = (-l).exp();
        let slope = if l < 1e-4 {
            0.5 + l / 6.0 - l * l / 24.0
        } else {
            (q - l * e) / (q * q)
        };
        (ztp_mean(l) - mean, slope)
    };
    let lo = (mean - 1.0).max(0.0);
    // Inverting m ~ 1 + l/2 for small m, l ~ m for large m.
    let start = if mean < 2.0 {
        2.0 * (mean - 1.0)
    } else {
        mean - (-mean).exp() * mean
    };
    let tol = Tolerance {
        x_tol: 0.0,
        f_tol: 1e-14 * mean,
    };
    match safeguarded_newton(f_df, lo, mean, start, tol) {
        Ok(l) => Ok(l),
        // The bracket can collapse onto a root that rounding keeps from meeting f_tol.
        Err(Error::NonConvergence { .. }) => safeguarded_newton(
            f_df,
            lo,
            mean,
            start,
            Tolerance {
                x_tol: 4.0 * f64::EPSILON * mean,
                f_tol: 1e-11 * mean,
            },
        ),
        Err(e) => Err(e),
    }
}

/// How many observations each table row contributes to the rate sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Weighting {
    /// One rate per word: row `(i, n_i)` has weight `n_i`.
    #[default]
    PerWord,
    /// One rate per distinct frequency: every row has weight 1.
    PerFrequency,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::PerWord => "per-word",
            Weighting::PerFrequency => "per-frequency",
        })
    }
}

impl FromStr for Weighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-word" => Ok(Weighting::PerWord),
            "per-frequency" => Ok(Weighting::PerFrequency),
            other => domain(format!("unknown weighting `{other}` (per-word or per-frequency)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaEntry {
    pub lambda: f64,
    pub weight: u64,
}

/// Weighted rates sorted ascending with distinct values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaSequence {
    entries: Vec<LambdaEntry>,
    total_weight: u64,
}

impl LambdaSequence {
    pub fn from_points(points: impl IntoIterator<Item = (f64, u64)>) -> Result<Self> {
        let entries: Vec<LambdaEntry> = points
            .into_iter()
            .map(|(lambda, weight)| LambdaEntry { lambda, weight })
            .collect();
        if entries.is_empty() {
            return Err(Error::EmptyInput("rate sequence has no entries".into()));
        }
        for (i, e) in entries.iter().enumerate() {
            if !(e.lambda >= 0.0) || e.lambda.is_infinite() {
                return Err(Error::InvariantViolation(format!(
                    "rate {} at position {i} is not a finite nonnegative number",
                    e.lambda
                )));
            }
            if e.weight == 0 {
                return Err(Error::InvariantViolation(format!("zero weight at position {i}")));
            }
            if i > 0 && !(entries[i - 1].lambda < e.lambda) {
                return Err(Error::InvariantViolation("rates must be strictly increasing".into()));
            }
        }
        let total_weight = entries.iter().map(|e| e.weight).sum();
        Ok(Self { entries, total_weight })
    }

    pub fn entries(&self) -> &[LambdaEntry] {
        &self.entries
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One rate per word (see [`Weighting::PerWord`]).
pub fn lambda_sequence_from_table(table: &FreqOfFreqTable) -> Result<LambdaSequence> {
    lambda_sequence_from_table_with(table, Weighting::PerWord)
}

/// Each row `(i, n_i)` yields the rate solving `i = lambda / (1 - e^-lambda)`.
pub fn lambda_sequence_from_table_with(table: &FreqOfFreqTable, weighting: Weighting) -> Result<LambdaSequence> {
    let points = table
        .rows()
        .iter()
        .map(|r| {
            let weight = match weighting {
                Weighting::PerWord => r.freq,
                Weighting::PerFrequency => 1,
            };
            Ok((ztp_lambda_from_mean(r.value as f64)?, weight))
        })
        .collect::<Result<Vec<_>>>()?;
    LambdaSequence::from_points(points)
}
