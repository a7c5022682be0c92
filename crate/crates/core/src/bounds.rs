use rand::Rng;
use serde::{Deserialize, Serialize};

/// Hyper-cubic search range: every coordinate lives in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lo: f64,
    pub hi: f64,
}

impl Bounds {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn range(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().all(|&v| v >= self.lo && v <= self.hi)
    }

    /// Uniform point in the box.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, dimension: usize) -> Vec<f64> {
        (0..dimension)
            .map(|_| self.lo + rng.random::<f64>() * self.range())
            .collect()
    }

    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lo, self.hi)
    }
}

/// Absorb bound handling: every coordinate outside the box is moved onto the
/// violated bound and the matching velocity component is zeroed.
///
/// `velocity` may be empty for individuals that do not carry one.
pub fn absorb_bounds(position: &mut [f64], velocity: &mut [f64], bounds: Bounds) {
    for (j, x) in position.iter_mut().enumerate() {
        let clamped = if *x < bounds.lo {
            bounds.lo
        } else if *x > bounds.hi {
            bounds.hi
        } else {
            continue;
        };
        *x = clamped;
        if let Some(v) = velocity.get_mut(j) {
            *v = 0.0;
        }
    }
}
