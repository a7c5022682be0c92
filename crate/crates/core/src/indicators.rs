//! Error-based performance indicators.
//!
//! Offline error is the mean, over every counted evaluation, of the gap
//! between the current environment's optimum and the best value found so
//! far in that environment. The average error before changes only looks at
//! the last of those gaps in each environment.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndicatorError {
    #[error("error log is empty")]
    EmptyLog,
    #[error("no runs to summarize")]
    NoRuns,
}

pub fn offline_error(per_fe_error: &[f64]) -> Result<f64, IndicatorError> {
    mean(per_fe_error).ok_or(IndicatorError::EmptyLog)
}

/// Average error before changes.
pub fn e_bbc(last_error_per_env: &[f64]) -> Result<f64, IndicatorError> {
    mean(last_error_per_env).ok_or(IndicatorError::EmptyLog)
}

fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Running mean of the per-evaluation error: the offline error as it
/// accumulates over the run.
pub fn running_mean(values: &[f64]) -> Vec<f64> {
    let mut sum = 0.0;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            sum += v;
            sum / (i + 1) as f64
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub run_index: usize,
    pub offline_error: f64,
    pub e_bbc: f64,
    pub per_fe_error: Vec<f64>,
    pub last_error_per_env: Vec<f64>,
}

impl RunResult {
    /// Indicators of one run from its logs. Empty logs (a run that never
    /// evaluated) give NaN indicators.
    pub fn from_logs(
        run_index: usize,
        per_fe_error: Vec<f64>,
        last_error_per_env: Vec<f64>,
    ) -> Self {
        Self {
            run_index,
            offline_error: offline_error(&per_fe_error).unwrap_or(f64::NAN),
            e_bbc: e_bbc(&last_error_per_env).unwrap_or(f64::NAN),
            per_fe_error,
            last_error_per_env,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Statistics {
    pub mean: f64,
    pub median: f64,
    pub standard_error: f64,
}

impl Statistics {
    /// Standard error uses the sample deviation (n - 1 denominator); a single
    /// value has standard error 0.
    pub fn of(values: &[f64]) -> Result<Self, IndicatorError> {
        let n = values.len();
        let mean = mean(values).ok_or(IndicatorError::NoRuns)?;
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
        };
        let standard_error = if n < 2 {
            0.0
        } else {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            var.sqrt() / (n as f64).sqrt()
        };
        Ok(Self {
            mean,
            median,
            standard_error,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    /// Ordered by `run_index`.
    pub runs: Vec<RunResult>,
    pub offline_error: Statistics,
    pub e_bbc: Statistics,
    /// Running-mean offline error per evaluation, averaged over runs.
    pub offline_error_series: Vec<f64>,
    /// Current error per evaluation, averaged over runs.
    pub current_error_series: Vec<f64>,
}

/// Aggregate runs. Runs are sorted by `run_index` first, so the result does
/// not depend on the order they finished in.
pub fn summarize(mut runs: Vec<RunResult>) -> Result<ExperimentSummary, IndicatorError> {
    if runs.is_empty() {
        return Err(IndicatorError::NoRuns);
    }
    runs.sort_by_key(|r| r.run_index);
    let eo: Vec<f64> = runs.iter().map(|r| r.offline_error).collect();
    let eb: Vec<f64> = runs.iter().map(|r| r.e_bbc).collect();

    let len = runs.iter().map(|r| r.per_fe_error.len()).max().unwrap_or(0);
    let mut offline = vec![0.0; len];
    let mut current = vec![0.0; len];
    for r in &runs {
        for (acc, v) in current.iter_mut().zip(&r.per_fe_error) {
            *acc += v;
        }
        for (acc, v) in offline.iter_mut().zip(running_mean(&r.per_fe_error)) {
            *acc += v;
        }
    }
    let n = runs.len() as f64;
    offline.iter_mut().for_each(|v| *v /= n);
    current.iter_mut().for_each(|v| *v /= n);

    Ok(ExperimentSummary {
        offline_error: Statistics::of(&eo)?,
        e_bbc: Statistics::of(&eb)?,
        runs,
        offline_error_series: offline,
        current_error_series: current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn offline_error_examples() {
        assert_eq!(offline_error(&[0.0; 5]).unwrap(), 0.0);
        assert_eq!(offline_error(&[3.0, 1.0]).unwrap(), 2.0);
        assert_eq!(offline_error(&[4.0, 2.0, 6.0, 0.0]).unwrap(), 3.0);
        assert_eq!(offline_error(&[]), Err(IndicatorError::EmptyLog));
    }

    #[test]
    fn e_bbc_examples() {
        assert_eq!(e_bbc(&[0.0]).unwrap(), 0.0);
        assert_eq!(e_bbc(&[5.0, 3.0]).unwrap(), 4.0);
        assert_eq!(e_bbc(&[2.5; 9]).unwrap(), 2.5);
        assert_eq!(e_bbc(&[]), Err(IndicatorError::EmptyLog));
    }

    fn run(i: usize, eo: f64) -> RunResult {
        RunResult {
            run_index: i,
            offline_error: eo,
            e_bbc: eo / 2.0,
            per_fe_error: vec![eo; 4],
            last_error_per_env: vec![eo / 2.0; 2],
        }
    }

    #[test]
    fn single_run_summary() {
        let s = summarize(vec![run(0, 3.0)]).unwrap();
        assert_eq!(s.offline_error.mean, 3.0);
        assert_eq!(s.offline_error.median, 3.0);
        assert_eq!(s.offline_error.standard_error, 0.0);
    }

    #[test]
    fn three_run_summary() {
        let s = summarize(vec![run(0, 1.0), run(1, 2.0), run(2, 3.0)]).unwrap();
        assert_eq!(s.offline_error.mean, 2.0);
        assert_eq!(s.offline_error.median, 2.0);
        assert!((s.offline_error.standard_error - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((s.offline_error.standard_error - 0.5774).abs() < 1e-4);
    }

    #[test]
    fn constant_runs_have_zero_standard_error() {
        let s = summarize((0..4).map(|i| run(i, 2.0)).collect()).unwrap();
        assert_eq!(s.offline_error.standard_error, 0.0);
    }

    #[test]
    fn no_runs_is_an_error() {
        assert_eq!(summarize(vec![]), Err(IndicatorError::NoRuns));
    }

    #[test]
    fn even_count_median() {
        assert_eq!(Statistics::of(&[4.0, 1.0, 3.0, 2.0]).unwrap().median, 2.5);
    }

    #[test]
    fn running_mean_ends_at_offline_error() {
        let log = [5.0, 4.0, 4.0, 1.0, 9.0, 3.0, 0.5];
        let rm = running_mean(&log);
        assert_eq!(*rm.last().unwrap(), offline_error(&log).unwrap());
        assert_eq!(rm[0], 5.0);
        assert_eq!(rm[1], 4.5);
    }

    proptest! {
        #[test]
        fn summary_is_permutation_invariant(
            values in prop::collection::vec(0.0f64..100.0, 1..8),
            seed in any::<u64>(),
        ) {
            let runs: Vec<RunResult> = values.iter().enumerate().map(|(i, &v)| run(i, v)).collect();
            let mut shuffled = runs.clone();
            let k = (seed as usize) % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
            prop_assert_eq!(summarize(runs).unwrap(), summarize(shuffled).unwrap());
        }
    }
}
