//! Python bindings: benchmark instances, experiments and indicators.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dynlab::benchmarks::{generate_sequence, EnvironmentSequence};
use dynlab::edoas::Registry;
use dynlab::indicators;
use dynlab::random::benchmark_stream;
use dynlab::runner::{self, ExperimentConfig, ExperimentOutcome, RunnerError};
use dynlab::{BenchmarkKind, ConfigError, ProblemSpec};

fn config_err(e: ConfigError) -> PyErr {
    PyValueError::new_err(e.0)
}

fn runner_err(e: RunnerError) -> PyErr {
    match e {
        RunnerError::Config(c) => config_err(c),
        e @ RunnerError::Io { .. } => PyOSError::new_err(e.to_string()),
        e => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_python(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).expect("json values serialize");
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn apply_params<F>(params: Option<HashMap<String, String>>, mut apply: F) -> PyResult<()>
where
    F: FnMut(&str, &str) -> Result<(), ConfigError>,
{
    let mut params: Vec<(String, String)> = params.unwrap_or_default().into_iter().collect();
    params.sort();
    for (k, v) in &params {
        apply(k, v).map_err(config_err)?;
    }
    Ok(())
}

fn problem_spec(
    benchmark: &str,
    dimension: usize,
    peaks: usize,
    change_frequency: usize,
    shift_severity: f64,
    environments: usize,
) -> PyResult<ProblemSpec> {
    Ok(ProblemSpec {
        benchmark: benchmark.parse::<BenchmarkKind>().map_err(config_err)?,
        dimension,
        peak_count: peaks,
        change_frequency,
        shift_severity,
        environment_count: environments,
        ..ProblemSpec::default()
    })
}

/// A generated sequence of benchmark environments.
#[pyclass(module = "dynlab_py", frozen)]
struct Problem {
    sequence: Arc<EnvironmentSequence>,
}

#[pymethods]
impl Problem {
    #[new]
    #[pyo3(signature = (benchmark="GMPB", dimension=5, peaks=10, change_frequency=5000,
        shift_severity=1.0, environments=100, seed=0, params=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        benchmark: &str,
        dimension: usize,
        peaks: usize,
        change_frequency: usize,
        shift_severity: f64,
        environments: usize,
        seed: u64,
        params: Option<HashMap<String, String>>,
    ) -> PyResult<Self> {
        let mut spec = problem_spec(
            benchmark,
            dimension,
            peaks,
            change_frequency,
            shift_severity,
            environments,
        )?;
        apply_params(params, |k, v| match spec.set_param(k, v)? {
            true => Ok(()),
            false => Err(ConfigError::new(format!("unknown parameter '{k}'"))),
        })?;
        let sequence = generate_sequence(&spec, &mut benchmark_stream(seed)).map_err(config_err)?;
        Ok(Self {
            sequence: Arc::new(sequence),
        })
    }

    fn __len__(&self) -> usize {
        self.sequence.len()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.sequence.spec.dimension
    }

    #[getter]
    fn bounds(&self) -> (f64, f64) {
        let b = self.sequence.spec.bounds();
        (b.lo, b.hi)
    }

    #[getter]
    fn fe_max(&self) -> usize {
        self.sequence.spec.fe_max()
    }

    /// Hex digest identifying the whole sequence.
    fn fingerprint(&self) -> String {
        self.sequence.fingerprint()
    }

    /// Fitness of `x` in environment `env` (1-based). Does not count
    /// towards any budget.
    fn fitness(&self, x: Vec<f64>, env: usize) -> PyResult<f64> {
        let state = self.state(env)?;
        if x.len() != state.dimension() {
            return Err(PyValueError::new_err(format!(
                "expected {} coordinates, got {}",
                state.dimension(),
                x.len()
            )));
        }
        Ok(state.fitness(&x))
    }

    /// `(value, position)` of the global optimum of environment `env`.
    fn optimum(&self, env: usize) -> PyResult<(f64, Vec<f64>)> {
        let s = self.state(env)?;
        Ok((s.optimum_value, s.optimum_position.clone()))
    }

    fn to_json(&self) -> String {
        self.sequence.to_json()
    }
}

impl Problem {
    fn state(&self, env: usize) -> PyResult<&dynlab::benchmarks::EnvironmentState> {
        if env == 0 || env > self.sequence.len() {
            return Err(PyValueError::new_err(format!(
                "environment {env} outside 1..={}",
                self.sequence.len()
            )));
        }
        Ok(self.sequence.state(env))
    }
}

/// Experiment configuration; `run()` executes it.
#[pyclass(module = "dynlab_py")]
struct Experiment {
    config: ExperimentConfig,
}

#[pymethods]
impl Experiment {
    #[new]
    #[pyo3(signature = (algorithm="mQSO", benchmark="GMPB", dimension=5, peaks=10,
        change_frequency=5000, shift_severity=1.0, environments=100, runs=31, seed=0,
        params=None, emit_frames=false, grid_resolution=100, education_seed=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        algorithm: &str,
        benchmark: &str,
        dimension: usize,
        peaks: usize,
        change_frequency: usize,
        shift_severity: f64,
        environments: usize,
        runs: usize,
        seed: u64,
        params: Option<HashMap<String, String>>,
        emit_frames: bool,
        grid_resolution: usize,
        education_seed: Option<u64>,
    ) -> PyResult<Self> {
        let registry = Registry::builtin();
        let name = registry.resolve(algorithm).map_err(config_err)?;
        let mut config = ExperimentConfig::new(name);
        config.problem = problem_spec(
            benchmark,
            dimension,
            peaks,
            change_frequency,
            shift_severity,
            environments,
        )?;
        config.run_count = runs;
        config.experiment_seed = seed;
        config.emit_frames = emit_frames;
        config.grid_resolution = grid_resolution;
        config.education_seed = education_seed;
        apply_params(params, |k, v| config.apply_param(k, v))?;
        config.validate(&registry).map_err(config_err)?;
        Ok(Self { config })
    }

    fn config(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_python(
            py,
            &serde_json::to_value(&self.config).expect("config serializes"),
        )
    }

    /// Run all configured runs. The GIL is released meanwhile.
    fn run(&self, py: Python<'_>) -> PyResult<Outcome> {
        let config = self.config.clone();
        let outcome = py
            .detach(move || runner::run_experiment(&config))
            .map_err(runner_err)?;
        Ok(Outcome { outcome })
    }
}

/// Result of an experiment.
#[pyclass(module = "dynlab_py", frozen)]
struct Outcome {
    outcome: ExperimentOutcome,
}

#[pymethods]
impl Outcome {
    #[getter]
    fn offline_errors(&self) -> Vec<f64> {
        self.outcome
            .summary
            .runs
            .iter()
            .map(|r| r.offline_error)
            .collect()
    }

    #[getter]
    fn e_bbcs(&self) -> Vec<f64> {
        self.outcome.summary.runs.iter().map(|r| r.e_bbc).collect()
    }

    #[getter]
    fn sequence_fingerprint(&self) -> String {
        self.outcome.sequence_fingerprint.clone()
    }

    #[getter]
    fn benchmark_seed(&self) -> u64 {
        self.outcome.benchmark_seed
    }

    /// Mean, median and standard error of both indicators.
    fn statistics(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let s = &self.outcome.summary;
        let value = serde_json::json!({
            "offline_error": s.offline_error,
            "e_bbc": s.e_bbc,
        });
        to_python(py, &value)
    }

    #[getter]
    fn offline_error_series(&self) -> Vec<f64> {
        self.outcome.summary.offline_error_series.clone()
    }

    #[getter]
    fn current_error_series(&self) -> Vec<f64> {
        self.outcome.summary.current_error_series.clone()
    }

    /// Write the result files; returns their paths.
    #[pyo3(signature = (output_dir, timestamp=None, error_series=false))]
    fn write(
        &self,
        output_dir: PathBuf,
        timestamp: Option<String>,
        error_series: bool,
    ) -> PyResult<Vec<String>> {
        let mut outcome = self.outcome.clone();
        outcome.config.output_dir = Some(output_dir);
        outcome.config.timestamp = timestamp;
        outcome.config.emit_error_series = error_series;
        let files = runner::write_outputs(&outcome).map_err(runner_err)?;
        Ok(files
            .all()
            .iter()
            .map(|p| p.to_string_lossy().into_owned())
            .collect())
    }
}

#[pyfunction]
fn algorithms() -> Vec<String> {
    Registry::builtin()
        .names()
        .into_iter()
        .map(String::from)
        .collect()
}

#[pyfunction]
fn benchmarks() -> Vec<String> {
    BenchmarkKind::ALL
        .iter()
        .map(|b| b.name().to_string())
        .collect()
}

#[pyfunction]
fn offline_error(per_fe_error: Vec<f64>) -> PyResult<f64> {
    indicators::offline_error(&per_fe_error).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pyfunction]
fn e_bbc(last_error_per_env: Vec<f64>) -> PyResult<f64> {
    indicators::e_bbc(&last_error_per_env).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn dynlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Problem>()?;
    m.add_class::<Experiment>()?;
    m.add_class::<Outcome>()?;
    m.add_function(wrap_pyfunction!(algorithms, m)?)?;
    m.add_function(wrap_pyfunction!(benchmarks, m)?)?;
    m.add_function(wrap_pyfunction!(offline_error, m)?)?;
    m.add_function(wrap_pyfunction!(e_bbc, m)?)?;
    Ok(())
}
