use std::fs;
use std::sync::Arc;

use rand::Rng;

use super::{ExperimentConfig, RunnerError};
use crate::benchmarks::{generate_sequence, EnvironmentSequence};
use crate::edoas::{Edoa, EdoaError, Registry};
use crate::evaluation::{EducationRecorder, EvaluationLedger, FitnessGateway};
use crate::indicators::{summarize, ExperimentSummary, RunResult};
use crate::random::{algorithm_stream, benchmark_stream};

/// One finished run with its raw logs (logs only kept on request).
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub result: RunResult,
    pub fitness_log: Vec<f64>,
    pub env_log: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub config: ExperimentConfig,
    /// Seed the environment sequence was generated from.
    pub benchmark_seed: u64,
    pub sequence_fingerprint: String,
    pub summary: ExperimentSummary,
    /// Raw logs per run, ordered by run index; empty unless
    /// `retain_logs` was set.
    pub logs: Vec<RunRecord>,
    pub education: Option<EducationRecorder>,
}

/// The environment sequence an experiment uses for a given benchmark seed.
/// It depends only on the problem and the seed, never on the algorithm.
pub fn generate_for(
    config: &ExperimentConfig,
    benchmark_seed: u64,
) -> Result<EnvironmentSequence, RunnerError> {
    let mut rng = benchmark_stream(benchmark_seed);
    Ok(generate_sequence(&config.problem, &mut rng)?)
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, RunnerError> {
    run_experiment_with(config, &Registry::builtin())
}

pub fn run_experiment_with(
    config: &ExperimentConfig,
    registry: &Registry,
) -> Result<ExperimentOutcome, RunnerError> {
    config.validate(registry)?;
    if let Some(dir) = &config.output_dir {
        probe_writable(dir)?;
    }
    let benchmark_seed = if config.emit_frames {
        config
            .education_seed
            .unwrap_or_else(|| rand::rng().random())
    } else {
        config.experiment_seed
    };
    let sequence = Arc::new(generate_for(config, benchmark_seed)?);
    let runs = config.effective_runs();

    let mut results = Vec::with_capacity(runs);
    let mut logs = Vec::new();
    let mut education = config
        .emit_frames
        .then(|| EducationRecorder::new(true, config.grid_resolution));
    for run in 1..=runs {
        let record = execute_run(
            Arc::clone(&sequence),
            config,
            registry,
            run,
            education.as_mut(),
        )?;
        if config.retain_logs {
            logs.push(record.clone());
        }
        results.push(record.result);
    }
    let summary = summarize(results).expect("at least one run");
    Ok(ExperimentOutcome {
        config: config.clone(),
        benchmark_seed,
        sequence_fingerprint: sequence.fingerprint(),
        summary,
        logs,
        education,
    })
}

/// Execute run `run_index` (1-based) on a shared environment sequence.
pub fn execute_run(
    sequence: Arc<EnvironmentSequence>,
    config: &ExperimentConfig,
    registry: &Registry,
    run_index: usize,
    recorder: Option<&mut EducationRecorder>,
) -> Result<RunRecord, RunnerError> {
    let mut ledger = EvaluationLedger::new(sequence);
    let rng = algorithm_stream(config.experiment_seed, run_index as u64);
    match registry.create(&config.edoa, &mut ledger, rng) {
        Ok(mut algorithm) => {
            let progress = config
                .progress
                .then_some((run_index, config.effective_runs()));
            drive(algorithm.as_mut(), &mut ledger, recorder, progress)?;
        }
        Err(EdoaError::BudgetExhausted(_)) => {}
        Err(EdoaError::Config(e)) => return Err(e.into()),
    }
    let keep = config.retain_logs;
    let (result, fitness_log, env_log) = ledger.into_parts(run_index);
    Ok(RunRecord {
        result,
        fitness_log: if keep { fitness_log } else { Vec::new() },
        env_log: if keep { env_log } else { Vec::new() },
    })
}

/// The main loop of one run: iterate, record, react to changes, until the
/// budget is spent. `progress` is `(run, runs)` for console reporting.
pub fn drive(
    algorithm: &mut dyn Edoa,
    ledger: &mut EvaluationLedger,
    mut recorder: Option<&mut EducationRecorder>,
    progress: Option<(usize, usize)>,
) -> Result<(), RunnerError> {
    let environments = ledger.sequence().len();
    let name = algorithm.name().to_string();
    let report = |env: usize| {
        if let Some((run, runs)) = progress {
            eprintln!("{name}: run {run}/{runs}, environment {env}/{environments}");
        }
    };
    report(ledger.current_env());
    if let Some(rec) = recorder.as_deref_mut() {
        rec.record_frame(ledger, 0, &algorithm.state().subpops);
    }
    let mut alive = true;
    if ledger.consume_change_flag() {
        report(ledger.current_env());
        alive = algorithm.react_to_change(ledger).is_ok();
    }
    let mut iteration = 0;
    while alive && !ledger.is_exhausted() {
        iteration += 1;
        let before = ledger.fe_counter();
        let step = algorithm.iterate(ledger);
        if let Some(rec) = recorder.as_deref_mut() {
            rec.record_frame(ledger, iteration, &algorithm.state().subpops);
        }
        if step.is_err() {
            break;
        }
        if ledger.fe_counter() == before {
            return Err(RunnerError::Stalled(algorithm.name().to_string()));
        }
        if ledger.consume_change_flag() {
            report(ledger.current_env());
            alive = algorithm.react_to_change(ledger).is_ok();
        }
    }
    if let Some(rec) = recorder {
        rec.finish(ledger);
    }
    Ok(())
}

fn probe_writable(dir: &std::path::Path) -> Result<(), RunnerError> {
    fs::create_dir_all(dir).map_err(|e| RunnerError::io(dir, e))?;
    let probe = dir.join(".dynlab-write-probe");
    fs::write(&probe, b"").map_err(|e| RunnerError::io(&probe, e))?;
    fs::remove_file(&probe).map_err(|e| RunnerError::io(&probe, e))
}
