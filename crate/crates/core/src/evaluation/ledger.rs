use std::sync::Arc;

use super::FitnessGateway;
use crate::benchmarks::{EnvironmentSequence, EnvironmentState};
use crate::bounds::Bounds;
use crate::error::BudgetExhausted;
use crate::indicators::RunResult;

/// Baseline value of `x` in `state` without any bookkeeping.
pub fn peek_fitness(x: &[f64], state: &EnvironmentState) -> f64 {
    state.fitness(x)
}

/// Counts evaluations, advances the environment every `change_frequency`
/// evaluations and logs the error of the best solution found so far in the
/// current environment after every evaluation.
///
/// The evaluation that lands on a multiple of `change_frequency` is charged
/// to the environment it ends; the next one is scored against the new
/// environment whether or not the optimizer has reacted yet.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationLedger {
    sequence: Arc<EnvironmentSequence>,
    change_frequency: usize,
    fe_max: usize,
    fe_counter: usize,
    current_env: usize,
    best_so_far: f64,
    per_fe_error: Vec<f64>,
    fitness_log: Vec<f64>,
    env_log: Vec<u32>,
    last_error_per_env: Vec<f64>,
    change_flag: bool,
    budget_exhausted: bool,
}

impl EvaluationLedger {
    pub fn new(sequence: Arc<EnvironmentSequence>) -> Self {
        let change_frequency = sequence.spec.change_frequency;
        let environments = sequence.len();
        let fe_max = change_frequency * environments;
        Self {
            sequence,
            change_frequency,
            fe_max,
            fe_counter: 0,
            current_env: 1,
            best_so_far: f64::NEG_INFINITY,
            per_fe_error: Vec::with_capacity(fe_max),
            fitness_log: Vec::with_capacity(fe_max),
            env_log: Vec::with_capacity(fe_max),
            last_error_per_env: vec![f64::NAN; environments],
            change_flag: false,
            budget_exhausted: false,
        }
    }

    /// Read-once change notification.
    pub fn consume_change_flag(&mut self) -> bool {
        std::mem::take(&mut self.change_flag)
    }

    /// Baseline value in the current environment; touches no counter.
    pub fn peek_fitness(&self, x: &[f64]) -> f64 {
        peek_fitness(x, self.current_state())
    }

    pub fn current_state(&self) -> &EnvironmentState {
        self.sequence.state(self.current_env)
    }

    pub fn sequence(&self) -> &Arc<EnvironmentSequence> {
        &self.sequence
    }

    pub fn fe_counter(&self) -> usize {
        self.fe_counter
    }

    pub fn fe_max(&self) -> usize {
        self.fe_max
    }

    pub fn change_frequency(&self) -> usize {
        self.change_frequency
    }

    /// 1-based index of the environment the next evaluation will use.
    pub fn current_env(&self) -> usize {
        self.current_env
    }

    pub fn best_so_far(&self) -> f64 {
        self.best_so_far
    }

    pub fn per_fe_error(&self) -> &[f64] {
        &self.per_fe_error
    }

    /// Raw fitness of every counted evaluation, in order.
    pub fn fitness_log(&self) -> &[f64] {
        &self.fitness_log
    }

    /// Environment each counted evaluation was scored in.
    pub fn env_log(&self) -> &[u32] {
        &self.env_log
    }

    /// Final error of every environment; NaN for environments not finished.
    pub fn last_error_per_env(&self) -> &[f64] {
        &self.last_error_per_env
    }

    /// Error after the most recent evaluation, NaN before the first one.
    pub fn current_error(&self) -> f64 {
        self.per_fe_error.last().copied().unwrap_or(f64::NAN)
    }

    pub fn budget_exhausted(&self) -> bool {
        self.budget_exhausted
    }

    pub fn into_run_result(self, run_index: usize) -> RunResult {
        RunResult::from_logs(run_index, self.per_fe_error, self.last_error_per_env)
    }

    /// Consume the ledger but keep the raw fitness and environment logs.
    pub fn into_parts(self, run_index: usize) -> (RunResult, Vec<f64>, Vec<u32>) {
        let fitness = self.fitness_log;
        let envs = self.env_log;
        (
            RunResult::from_logs(run_index, self.per_fe_error, self.last_error_per_env),
            fitness,
            envs,
        )
    }
}

impl FitnessGateway for EvaluationLedger {
    fn dimension(&self) -> usize {
        self.sequence.spec.dimension
    }

    fn bounds(&self) -> Bounds {
        self.sequence.spec.bounds()
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64, BudgetExhausted> {
        if self.fe_counter >= self.fe_max {
            self.budget_exhausted = true;
            return Err(BudgetExhausted);
        }
        let state = self.sequence.state(self.current_env);
        let value = state.fitness(x);
        self.fe_counter += 1;
        self.best_so_far = self.best_so_far.max(value);
        self.per_fe_error
            .push(state.optimum_value - self.best_so_far);
        self.fitness_log.push(value);
        self.env_log.push(self.current_env as u32);

        if self.fe_counter.is_multiple_of(self.change_frequency) {
            self.last_error_per_env[self.current_env - 1] = self.current_error();
            if self.fe_counter < self.fe_max {
                self.current_env += 1;
                self.best_so_far = f64::NEG_INFINITY;
                self.change_flag = true;
            } else {
                self.budget_exhausted = true;
            }
        }
        Ok(value)
    }

    fn is_exhausted(&self) -> bool {
        self.budget_exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::generate_sequence;
    use crate::problem::{BenchmarkKind, ProblemSpec};
    use crate::random::benchmark_stream;

    fn sequence(cf: usize, envs: usize) -> Arc<EnvironmentSequence> {
        let spec = ProblemSpec {
            benchmark: BenchmarkKind::Mpb,
            dimension: 2,
            peak_count: 3,
            change_frequency: cf,
            environment_count: envs,
            ..ProblemSpec::default()
        };
        Arc::new(generate_sequence(&spec, &mut benchmark_stream(1)).unwrap())
    }

    #[test]
    fn evaluating_the_optimum_gives_zero_error() {
        let mut ledger = EvaluationLedger::new(sequence(10, 2));
        let opt = ledger.current_state().optimum_position.clone();
        ledger.evaluate(&opt).unwrap();
        assert_eq!(ledger.per_fe_error(), &[0.0]);
    }

    #[test]
    fn environment_advances_on_the_boundary_evaluation() {
        let mut ledger = EvaluationLedger::new(sequence(3, 3));
        for _ in 0..2 {
            ledger.evaluate(&[0.0, 0.0]).unwrap();
            assert_eq!(ledger.current_env(), 1);
        }
        ledger.evaluate(&[0.0, 0.0]).unwrap();
        assert_eq!(ledger.current_env(), 2);
        assert!(ledger.consume_change_flag());
        assert!(!ledger.consume_change_flag());
        assert_eq!(ledger.env_log(), &[1, 1, 1]);
        assert!(ledger.best_so_far().is_infinite());
    }

    /// One cone of height 70 and unit slope at the origin.
    fn single_cone(cf: usize) -> Arc<EnvironmentSequence> {
        let mut seq = (*sequence(cf, 1)).clone();
        seq.spec.peak_count = 1;
        let s = &mut seq.states[0];
        s.centers = vec![vec![0.0, 0.0]];
        s.heights = vec![70.0];
        s.widths = vec![vec![1.0]];
        s.refresh_optimum();
        Arc::new(seq)
    }

    #[test]
    fn best_so_far_keeps_the_earlier_value() {
        let mut ledger = EvaluationLedger::new(single_cone(10));
        assert_eq!(ledger.evaluate(&[10.0, 0.0]).unwrap(), 60.0);
        assert_eq!(ledger.evaluate(&[0.0, 20.0]).unwrap(), 50.0);
        assert_eq!(ledger.per_fe_error(), &[10.0, 10.0]);
        assert_eq!(ledger.fitness_log(), &[60.0, 50.0]);
    }

    #[test]
    fn budget_is_exact() {
        let mut ledger = EvaluationLedger::new(sequence(4, 3));
        let mut n = 0;
        while ledger.evaluate(&[1.0, 1.0]).is_ok() {
            n += 1;
        }
        assert_eq!(n, 12);
        assert_eq!(ledger.fe_counter(), 12);
        assert!(ledger.budget_exhausted());
        assert_eq!(ledger.current_env(), 3);
        assert!(ledger.last_error_per_env().iter().all(|e| e.is_finite()));
        assert_eq!(ledger.evaluate(&[0.0, 0.0]), Err(BudgetExhausted));
        assert_eq!(ledger.fe_counter(), 12);
    }

    #[test]
    fn peek_does_not_touch_the_ledger() {
        let mut ledger = EvaluationLedger::new(sequence(5, 2));
        ledger.evaluate(&[3.0, 3.0]).unwrap();
        let snapshot = ledger.clone();
        for i in 0..10_000 {
            let x = [(i % 100) as f64 - 50.0, 1.0];
            ledger.peek_fitness(&x);
        }
        assert_eq!(format!("{ledger:?}"), format!("{snapshot:?}"));
        let x = [2.0, -7.0];
        let peeked = ledger.peek_fitness(&x);
        let before = ledger.fe_counter();
        assert_eq!(ledger.evaluate(&x).unwrap(), peeked);
        assert_eq!(ledger.fe_counter(), before + 1);
    }

    #[test]
    fn peek_at_optimum_is_optimum_value() {
        let ledger = EvaluationLedger::new(sequence(5, 2));
        let s = ledger.current_state();
        assert!((ledger.peek_fitness(&s.optimum_position) - s.optimum_value).abs() < 1e-9);
    }

    #[test]
    fn errors_never_increase_within_an_environment() {
        let mut ledger = EvaluationLedger::new(sequence(50, 4));
        let mut rng = crate::random::algorithm_stream(0, 0);
        let b = ledger.bounds();
        while ledger.evaluate(&b.sample(&mut rng, 2)).is_ok() {}
        let errs = ledger.per_fe_error();
        for (i, w) in errs.windows(2).enumerate() {
            let same_env = (i + 1) % 50 != 0;
            if same_env {
                assert!(w[1] <= w[0]);
            }
        }
        assert!(errs.iter().all(|&e| e >= 0.0));
        for (i, &env) in ledger.env_log().iter().enumerate() {
            assert_eq!(env as usize, (i + 1).div_ceil(50));
        }
    }
}
