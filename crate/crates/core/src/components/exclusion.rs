use std::cmp::Ordering;

use crate::bounds::Bounds;
use crate::error::BudgetExhausted;
use crate::population::{Role, SubPopulation};
use crate::random::distance;

/// `0.5 * (hi - lo) / m^(1/d)`, with the number of sub-populations standing
/// in for the unknown number of peaks.
pub fn exclusion_radius(bounds: Bounds, subpop_count: usize, dimension: usize) -> f64 {
    assert!(subpop_count >= 1);
    0.5 * bounds.range() / (subpop_count as f64).powf(1.0 / dimension as f64)
}

/// Quality order: higher gbest wins, and on equal gbest the lower id wins.
fn ranks_below(a: &SubPopulation, b: &SubPopulation) -> bool {
    match a.gbest_value.total_cmp(&b.gbest_value) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.id > b.id,
    }
}

/// Ids of sub-populations that lose at least one pairwise comparison against
/// a neighbour closer than `r_excl`, in ascending order. Depends only on the
/// set of sub-populations, not their order.
pub fn exclusion_losers(subpops: &[SubPopulation], r_excl: f64) -> Vec<u32> {
    let mut losers = Vec::new();
    for (i, a) in subpops.iter().enumerate() {
        for b in &subpops[i + 1..] {
            if distance(&a.gbest_position, &b.gbest_position) < r_excl {
                losers.push(if ranks_below(a, b) { a.id } else { b.id });
            }
        }
    }
    losers.sort_unstable();
    losers.dedup();
    losers
}

/// Reinitialize every exclusion loser with `reinit`. Returns the ids that
/// were reinitialized.
pub fn exclusion<F>(
    subpops: &mut [SubPopulation],
    r_excl: f64,
    mut reinit: F,
) -> Result<Vec<u32>, BudgetExhausted>
where
    F: FnMut(&mut SubPopulation) -> Result<(), BudgetExhausted>,
{
    let losers = exclusion_losers(subpops, r_excl);
    for sp in subpops.iter_mut().filter(|sp| losers.contains(&sp.id)) {
        reinit(sp)?;
    }
    Ok(losers)
}

/// Diameter of the neutral members (all members if none is neutral) is
/// below `r_conv`.
pub fn is_converged(subpop: &SubPopulation, r_conv: f64) -> bool {
    let neutral: Vec<&[f64]> = subpop
        .members
        .iter()
        .filter(|m| m.role == Role::Neutral)
        .map(|m| m.position.as_slice())
        .collect();
    let points: Vec<&[f64]> = if neutral.is_empty() {
        subpop.positions().collect()
    } else {
        neutral
    };
    let mut diameter: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            diameter = diameter.max(distance(a, b));
        }
    }
    diameter < r_conv
}

/// Index of the lowest-ranked sub-population.
pub fn worst_subpop<'a, I>(subpops: I) -> Option<usize>
where
    I: IntoIterator<Item = &'a SubPopulation>,
{
    let mut worst: Option<(usize, &SubPopulation)> = None;
    for (i, sp) in subpops.into_iter().enumerate() {
        if worst.is_none_or(|(_, w)| ranks_below(sp, w)) {
            worst = Some((i, sp));
        }
    }
    worst.map(|(i, _)| i)
}

/// When every sub-population has converged, reinitialize the worst one.
/// Returns its id.
pub fn anti_convergence<F>(
    subpops: &mut [SubPopulation],
    r_conv: f64,
    mut reinit: F,
) -> Result<Option<u32>, BudgetExhausted>
where
    F: FnMut(&mut SubPopulation) -> Result<(), BudgetExhausted>,
{
    if subpops.is_empty() || !subpops.iter().all(|sp| is_converged(sp, r_conv)) {
        return Ok(None);
    }
    let i = worst_subpop(subpops.iter()).expect("non-empty");
    reinit(&mut subpops[i])?;
    Ok(Some(subpops[i].id))
}
