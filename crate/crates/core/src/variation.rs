//! Assortative mating and linkage-tree crossover.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linkage::LinkageTree;
use crate::mfo::{Evaluator, Individual, Population};
use crate::task::{unified_space, TaskId};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatingParams {
    pub max_p: u32,
    pub mutation_rate: f64,
}

impl Default for MatingParams {
    fn default() -> Self {
        Self {
            max_p: 10,
            mutation_rate: 0.05,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct MatingOutcome {
    /// Best-of-pair offspring, one per parent pair.
    pub offspring: Vec<Individual>,
    /// Parents whose skill task was not the one selected for their pair.
    pub backup: Vec<Individual>,
}

impl MatingOutcome {
    pub fn into_intermediate(self) -> Vec<Individual> {
        let mut all = self.offspring;
        all.extend(self.backup);
        all
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PunishmentState {
    pub count: u32,
    pub max_p: u32,
}

/// What happened during one traversal of the tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CrossoverReport {
    pub masks_visited: usize,
    pub replacements: usize,
    pub restarted: bool,
    pub evaluations: u64,
}

/// Pairs the population at random and recombines every pair on one task.
///
/// Equal-skill pairs stay on their task. Mixed pairs pick one of the two
/// tasks by a fair coin and the parent whose task lost goes unchanged into the
/// backup list. Both offspring take the selected task as skill factor and
/// the better of the two is kept.
pub fn assortative_mating<R: Rng + ?Sized>(
    pop: &Population,
    trees: &[LinkageTree],
    params: &MatingParams,
    rng: &mut R,
    evaluator: &mut Evaluator,
) -> Result<MatingOutcome> {
    if !pop.len().is_multiple_of(2) {
        return Err(Error::InvalidState(format!(
            "cannot pair a population of odd size {}",
            pop.len()
        )));
    }
    let (_, alphabet) = unified_space(evaluator.tasks());
    let mut order: Vec<usize> = (0..pop.len()).collect();
    order.shuffle(rng);

    let mut outcome = MatingOutcome::default();
    for pair in order.chunks_exact(2) {
        let (p_i, p_j) = (&pop.members[pair[0]], &pop.members[pair[1]]);
        let (tau_i, tau_j) = (p_i.skill_factor, p_j.skill_factor);
        let mut tau = tau_i;
        if tau_i != tau_j {
            if rng.gen_bool(0.5) {
                outcome.backup.push(p_j.clone());
            } else {
                tau = tau_j;
                outcome.backup.push(p_i.clone());
            }
        }
        let tree = trees
            .iter()
            .find(|t| t.task_id == tau)
            .ok_or_else(|| Error::InvalidState(format!("no linkage tree for task {tau}")))?;

        let mut state = PunishmentState {
            count: p_i.punishment.max(p_j.punishment),
            max_p: params.max_p,
        };
        let (mut o_i, mut o_j, _) = tree_crossover(
            p_i.clone(),
            p_j.clone(),
            tree,
            tau,
            &mut state,
            rng,
            evaluator,
        );
        for o in [&mut o_i, &mut o_j] {
            o.skill_factor = tau;
            o.punishment = state.count;
            if mutate(o, params.mutation_rate, alphabet, rng) {
                evaluator.evaluate_individual(o, tau);
            }
        }
        let best = if o_j.cost(tau).unwrap() < o_i.cost(tau).unwrap() {
            o_j
        } else {
            o_i
        };
        outcome.offspring.push(best);
    }
    Ok(outcome)
}

fn fresh_candidate(parent: &Individual, genotype: Vec<u32>) -> Individual {
    let mut c = Individual::new(genotype, parent.num_tasks());
    c.skill_factor = parent.skill_factor;
    c.punishment = parent.punishment;
    c
}

/// Two-parent crossover guided by `tree` on task `task`.
///
/// Masks are visited in the tree's traversal order. For each mask the
/// masked genes are swapped between the current pair; if either candidate is
/// strictly cheaper than both members of the pair, the candidates become
/// the pair. A traversal without any replacement bumps the punishment
/// counter, and once the counter exceeds `max_p` the pair is replaced by two
/// random individuals.
///
/// Candidates whose task-space genes equal the current pair (as a set) carry
/// no new information and are not evaluated.
pub fn tree_crossover<R: Rng + ?Sized>(
    mut p_i: Individual,
    mut p_j: Individual,
    tree: &LinkageTree,
    task: TaskId,
    state: &mut PunishmentState,
    rng: &mut R,
    evaluator: &mut Evaluator,
) -> (Individual, Individual, CrossoverReport) {
    let start = evaluator.evaluations();
    let mut report = CrossoverReport::default();
    let dim = evaluator.tasks()[task].dimension();
    let mut cost_i = evaluator.ensure_cost(&mut p_i, task);
    let mut cost_j = evaluator.ensure_cost(&mut p_j, task);

    for mask in tree.masks() {
        report.masks_visited += 1;
        let total_diff = (0..dim)
            .filter(|&g| p_i.genotype[g] != p_j.genotype[g])
            .count();
        let mask_diff = mask
            .iter()
            .filter(|&&g| p_i.genotype[g] != p_j.genotype[g])
            .count();
        if mask_diff == 0 || mask_diff == total_diff {
            continue;
        }
        let mut gi = p_i.genotype.clone();
        let mut gj = p_j.genotype.clone();
        for &g in mask {
            std::mem::swap(&mut gi[g], &mut gj[g]);
        }
        let mut c_i = fresh_candidate(&p_i, gi);
        let mut c_j = fresh_candidate(&p_j, gj);
        let ci = evaluator.evaluate_individual(&mut c_i, task);
        let cj = evaluator.evaluate_individual(&mut c_j, task);
        let pair_best = cost_i.min(cost_j);
        if ci < pair_best || cj < pair_best {
            (p_i, p_j) = (c_i, c_j);
            (cost_i, cost_j) = (ci, cj);
            report.replacements += 1;
        }
    }

    if report.replacements > 0 {
        state.count = 0;
    } else {
        state.count += 1;
        if state.count > state.max_p {
            let (dim_u, alphabet) = unified_space(evaluator.tasks());
            let num_tasks = p_i.num_tasks();
            p_i = Individual::random(rng, dim_u, alphabet, num_tasks);
            p_j = Individual::random(rng, dim_u, alphabet, num_tasks);
            evaluator.evaluate_individual(&mut p_i, task);
            evaluator.evaluate_individual(&mut p_j, task);
            state.count = 0;
            report.restarted = true;
        }
    }
    report.evaluations = evaluator.evaluations() - start;
    (p_i, p_j, report)
}

/// Resets each gene to a uniform value with probability `rate`. Costs are
/// dropped when the genotype actually changed; the return value says whether
/// it did.
pub fn mutate<R: Rng + ?Sized>(
    ind: &mut Individual,
    rate: f64,
    alphabet: usize,
    rng: &mut R,
) -> bool {
    if rate <= 0.0 {
        return false;
    }
    let mut changed = false;
    for g in ind.genotype.iter_mut() {
        if rng.gen_bool(rate.min(1.0)) {
            let v = rng.gen_range(0..alphabet as u32);
            changed |= v != *g;
            *g = v;
        }
    }
    if changed {
        ind.invalidate();
    }
    changed
}
