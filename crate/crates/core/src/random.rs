//! Deterministic random streams.
//!
//! Every experiment owns two independent generator states: the benchmark
//! stream, seeded only from the experiment seed so that all algorithms face
//! the same problem instance, and one algorithm stream per run, seeded from
//! `experiment_seed ^ run_index`. The two live on different ChaCha stream
//! ids, so even run 0 never replays benchmark draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type Stream = ChaCha8Rng;

const BENCHMARK_STREAM_ID: u64 = 0;
const ALGORITHM_STREAM_ID: u64 = 1;

pub fn benchmark_stream(experiment_seed: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(experiment_seed);
    rng.set_stream(BENCHMARK_STREAM_ID);
    rng
}

pub fn algorithm_stream(experiment_seed: u64, run_index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(experiment_seed ^ run_index);
    rng.set_stream(ALGORITHM_STREAM_ID);
    rng
}

/// The pair of generators used by one run.
#[derive(Debug, Clone)]
pub struct RandomStreams {
    pub benchmark: Stream,
    pub algorithm: Stream,
}

impl RandomStreams {
    pub fn new(experiment_seed: u64, run_index: u64) -> Self {
        Self {
            benchmark: benchmark_stream(experiment_seed),
            algorithm: algorithm_stream(experiment_seed, run_index),
        }
    }
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Direction drawn uniformly from the unit sphere in `dimension` dimensions.
pub fn unit_random_vector<R: Rng + ?Sized>(rng: &mut R, dimension: usize) -> Vec<f64> {
    assert!(dimension >= 1, "dimension must be positive");
    loop {
        let mut v: Vec<f64> = (0..dimension).map(|_| gaussian(rng)).collect();
        let norm = norm(&v);
        if norm > 0.0 && norm.is_finite() {
            v.iter_mut().for_each(|c| *c /= norm);
            return v;
        }
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
