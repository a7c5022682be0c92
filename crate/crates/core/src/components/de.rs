use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{absorb_bounds, Bounds};
use crate::error::{BudgetExhausted, ConfigError};
use crate::evaluation::FitnessGateway;
use crate::population::{Role, SubPopulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeStrategy {
    /// `x_r1 + F (x_r2 - x_r3) + F (x_r4 - x_r5)`
    #[serde(rename = "rand/2/bin")]
    Rand2Bin,
    /// `best + F (x_r1 - x_r2) + F (x_r3 - x_r4)`
    #[serde(rename = "best/2/bin")]
    Best2Bin,
}

impl DeStrategy {
    pub fn donors(self) -> usize {
        match self {
            DeStrategy::Rand2Bin => 5,
            DeStrategy::Best2Bin => 4,
        }
    }

    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s.to_ascii_lowercase().trim_start_matches("de/") {
            "rand/2/bin" | "rand2bin" => Ok(DeStrategy::Rand2Bin),
            "best/2/bin" | "best2bin" => Ok(DeStrategy::Best2Bin),
            _ => Err(ConfigError::new(format!(
                "unknown DE strategy '{s}'; expected rand/2/bin or best/2/bin"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeParams {
    pub f: f64,
    pub cr: f64,
    pub strategy: DeStrategy,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            f: 0.5,
            cr: 0.9,
            strategy: DeStrategy::Rand2Bin,
        }
    }
}

impl DeParams {
    /// Smallest population the strategy can run on.
    pub const MIN_POPULATION: usize = 6;

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.f.is_nan() || self.f <= 0.0 {
            return Err(ConfigError::new("DE scale factor F must be positive"));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(ConfigError::new("DE crossover rate CR must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Donor combination of `strategy`. `donors` must hold at least
/// `strategy.donors()` vectors; `best` is only read by best/2.
pub fn mutant(strategy: DeStrategy, f: f64, donors: &[&[f64]], best: &[f64]) -> Vec<f64> {
    let (base, diffs) = match strategy {
        DeStrategy::Rand2Bin => (donors[0], &donors[1..5]),
        DeStrategy::Best2Bin => (best, &donors[0..4]),
    };
    (0..base.len())
        .map(|j| base[j] + f * (diffs[0][j] - diffs[1][j]) + f * (diffs[2][j] - diffs[3][j]))
        .collect()
}

/// Binomial crossover; coordinate `j_rand` always comes from the mutant.
pub fn binomial_crossover<R: Rng + ?Sized>(
    target: &[f64],
    mutant: &[f64],
    cr: f64,
    rng: &mut R,
) -> Vec<f64> {
    let j_rand = rng.random_range(0..target.len());
    target
        .iter()
        .zip(mutant)
        .enumerate()
        .map(|(j, (&t, &m))| {
            if j == j_rand || rng.random::<f64>() < cr {
                m
            } else {
                t
            }
        })
        .collect()
}

/// One DE generation over the plain members: every trial is built from the
/// population as it was at entry, then evaluated and kept if it is at least
/// as good as its target.
pub fn de_step<R: Rng + ?Sized>(
    subpop: &mut SubPopulation,
    params: &DeParams,
    bounds: Bounds,
    rng: &mut R,
    gateway: &mut dyn FitnessGateway,
) -> Result<(), BudgetExhausted> {
    let n = subpop.members.len();
    let k = params.strategy.donors();
    assert!(
        n > k,
        "DE population of {n} is too small for {:?}",
        params.strategy
    );
    let snapshot: Vec<Vec<f64>> = subpop.members.iter().map(|m| m.position.clone()).collect();
    let best = subpop.gbest_position.clone();

    let mut trials = Vec::new();
    for (i, m) in subpop.members.iter().enumerate() {
        if m.role != Role::Plain {
            continue;
        }
        // k distinct indices from the population without the target.
        let donors: Vec<&[f64]> = sample(rng, n - 1, k)
            .iter()
            .map(|r| snapshot[if r >= i { r + 1 } else { r }].as_slice())
            .collect();
        let v = mutant(params.strategy, params.f, &donors, &best);
        let mut trial = binomial_crossover(&m.position, &v, params.cr, rng);
        absorb_bounds(&mut trial, &mut [], bounds);
        trials.push((i, trial));
    }

    let mut outcome = Ok(());
    for (i, trial) in trials {
        match gateway.evaluate(&trial) {
            Ok(value) => {
                let m = &mut subpop.members[i];
                if value >= m.pbest_value {
                    m.position = trial;
                    m.current_value = value;
                    m.pbest_value = value;
                    m.pbest_position.clone_from(&m.position);
                }
            }
            Err(e) => {
                outcome = Err(e);
                break;
            }
        }
    }
    subpop.refresh_gbest();
    outcome
}
