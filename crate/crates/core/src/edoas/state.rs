use crate::components::{evaluate_member, ShiftEstimator};
use crate::error::BudgetExhausted;
use crate::evaluation::FitnessGateway;
use crate::population::{Individual, Role, SubPopulation};
use crate::random::{distance, Stream};

/// Mutable state every built-in algorithm carries.
#[derive(Debug, Clone)]
pub struct AlgorithmState {
    pub subpops: Vec<SubPopulation>,
    pub shift: ShiftEstimator,
    pub iteration: usize,
    pub rng: Stream,
    next_id: u32,
}

/// Member roles of a freshly generated sub-population.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Layout {
    pub neutral: usize,
    pub quantum: usize,
    pub brownian: usize,
    pub plain: usize,
}

impl Layout {
    fn roles(self) -> impl Iterator<Item = Role> {
        std::iter::repeat_n(Role::Neutral, self.neutral)
            .chain(std::iter::repeat_n(Role::Quantum, self.quantum))
            .chain(std::iter::repeat_n(Role::Plain, self.plain))
            .chain(std::iter::repeat_n(Role::Brownian, self.brownian))
    }
}

impl AlgorithmState {
    pub fn new(rng: Stream, initial_shift: f64) -> Self {
        Self {
            subpops: Vec::new(),
            shift: ShiftEstimator::new(initial_shift),
            iteration: 0,
            rng,
            next_id: 0,
        }
    }

    pub fn individual_count(&self) -> usize {
        self.subpops.iter().map(|s| s.members.len()).sum()
    }

    /// Uniformly placed sub-population, appended and then evaluated member
    /// by member.
    pub(crate) fn spawn(
        &mut self,
        layout: Layout,
        problem: &mut dyn FitnessGateway,
    ) -> Result<(), BudgetExhausted> {
        let bounds = problem.bounds();
        let d = problem.dimension();
        let members: Vec<Individual> = layout
            .roles()
            .map(|role| Individual::new(bounds.sample(&mut self.rng, d), role))
            .collect();
        let id = self.next_id;
        self.next_id += 1;
        self.subpops.push(SubPopulation::new(id, members));
        let sp = self.subpops.last_mut().expect("just pushed");
        let all: Vec<usize> = (0..sp.members.len()).collect();
        crate::components::evaluate_members(sp, &all, problem)
    }

    /// Measure how far every tracked gbest moved since the previous change,
    /// feed the shift estimator and remember the current gbests.
    pub(crate) fn observe_relocations(&mut self) -> f64 {
        let mut moved = Vec::new();
        for sp in &mut self.subpops {
            if let Some(prev) = &sp.last_change_gbest {
                moved.push(distance(prev, &sp.gbest_position));
            }
            sp.last_change_gbest = Some(sp.gbest_position.clone());
        }
        self.shift.update(&moved)
    }

    /// Re-evaluate the personal bests of every member not listed in `skip`
    /// (pairs of sub-population index and member index) in the current
    /// environment, then refresh every gbest.
    pub(crate) fn refresh_memories(
        &mut self,
        skip: &[(usize, usize)],
        problem: &mut dyn FitnessGateway,
    ) -> Result<(), BudgetExhausted> {
        let mut outcome = Ok(());
        'outer: for (s, sp) in self.subpops.iter_mut().enumerate() {
            for (i, m) in sp.members.iter_mut().enumerate() {
                if skip.contains(&(s, i)) {
                    continue;
                }
                match problem.evaluate(&m.pbest_position) {
                    Ok(v) => {
                        m.pbest_value = v;
                        if m.position == m.pbest_position {
                            m.current_value = v;
                        }
                    }
                    Err(e) => {
                        outcome = Err(e);
                        break 'outer;
                    }
                }
            }
        }
        for sp in &mut self.subpops {
            sp.refresh_gbest();
        }
        outcome
    }
}

/// Scatter all members of `sp` uniformly, clear their memories and evaluate
/// them.
pub(crate) fn reinitialize(
    sp: &mut SubPopulation,
    rng: &mut Stream,
    problem: &mut dyn FitnessGateway,
) -> Result<(), BudgetExhausted> {
    let bounds = problem.bounds();
    let d = problem.dimension();
    for m in &mut sp.members {
        m.position = bounds.sample(rng, d);
        m.velocity.iter_mut().for_each(|v| *v = 0.0);
        m.reset_memory();
    }
    sp.gbest_value = f64::NEG_INFINITY;
    sp.converged = false;
    sp.is_free = true;
    sp.last_change_gbest = None;
    let mut outcome = Ok(());
    for m in &mut sp.members {
        if let Err(e) = evaluate_member(m, problem) {
            outcome = Err(e);
            break;
        }
    }
    sp.refresh_gbest();
    outcome
}
