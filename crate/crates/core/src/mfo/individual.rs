use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::task::{Gene, TaskId};

/// A genotype in the unified search space plus its multifactorial bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub genotype: Vec<Gene>,
    /// Cost on each task, `None` when the individual was never evaluated there.
    pub factorial_costs: Vec<Option<f64>>,
    /// 1-based rank on each task among individuals evaluated on it.
    pub factorial_ranks: Vec<Option<usize>>,
    pub scalar_fitness: f64,
    pub skill_factor: TaskId,
    /// Consecutive improvement-free crossover traversals.
    pub punishment: u32,
}

impl Individual {
    pub fn new(genotype: Vec<Gene>, num_tasks: usize) -> Self {
        Self {
            genotype,
            factorial_costs: vec![None; num_tasks],
            factorial_ranks: vec![None; num_tasks],
            scalar_fitness: 0.0,
            skill_factor: 0,
            punishment: 0,
        }
    }

    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        dimension: usize,
        alphabet: usize,
        num_tasks: usize,
    ) -> Self {
        let genotype = (0..dimension)
            .map(|_| rng.gen_range(0..alphabet as Gene))
            .collect();
        Self::new(genotype, num_tasks)
    }

    pub fn num_tasks(&self) -> usize {
        self.factorial_costs.len()
    }

    pub fn cost(&self, task: TaskId) -> Option<f64> {
        self.factorial_costs[task]
    }

    /// Cost on the skill-factor task, `+inf` if missing.
    pub fn skill_cost(&self) -> f64 {
        self.factorial_costs[self.skill_factor].unwrap_or(f64::INFINITY)
    }

    /// Drops all costs and ranks after the genotype changed.
    pub fn invalidate(&mut self) {
        self.factorial_costs.iter_mut().for_each(|c| *c = None);
        self.factorial_ranks.iter_mut().for_each(|r| *r = None);
        self.scalar_fitness = 0.0;
    }

    /// Copies costs known on `other` (same genotype) that are missing here.
    pub(crate) fn absorb(&mut self, other: &Individual) {
        debug_assert_eq!(self.genotype, other.genotype);
        for (mine, theirs) in self.factorial_costs.iter_mut().zip(&other.factorial_costs) {
            if mine.is_none() {
                *mine = *theirs;
            }
        }
        self.punishment = self.punishment.max(other.punishment);
    }
}
