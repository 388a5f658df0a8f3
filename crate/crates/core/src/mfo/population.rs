use rand::Rng;

use crate::mfo::{Evaluator, Individual};
use crate::task::{unified_space, validate_tasks, TaskDefinition};
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Population {
    pub members: Vec<Individual>,
}

impl Population {
    pub fn new(members: Vec<Individual>) -> Self {
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Lowest known cost on `task` among the members.
    pub fn best_cost(&self, task: usize) -> Option<f64> {
        self.members
            .iter()
            .filter_map(|m| m.cost(task))
            .min_by(|a, b| a.total_cmp(b))
    }
}

pub(crate) fn check_pop_size(n: usize) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "population size must be even and >= 2, got {n}"
        )));
    }
    Ok(())
}

/// Draws `n` uniform genotypes over the unified space, evaluates each on
/// every task and assigns ranks, scalar fitness and skill factors.
pub fn initialize_population<R: Rng + ?Sized>(
    tasks: &[TaskDefinition],
    n: usize,
    rng: &mut R,
    evaluator: &mut Evaluator,
) -> Result<Population> {
    validate_tasks(tasks)?;
    check_pop_size(n)?;
    let (dim, alphabet) = unified_space(tasks);
    let mut members = Vec::with_capacity(n);
    for _ in 0..n {
        let mut ind = Individual::random(rng, dim, alphabet, tasks.len());
        for t in 0..tasks.len() {
            evaluator.evaluate_individual(&mut ind, t);
        }
        members.push(ind);
    }
    assign_ranks_and_skill(&mut members, tasks.len())?;
    Ok(Population { members })
}

/// Ranks members per task by ascending cost (stable, so equal costs keep
/// insertion order). Members without a cost on a task get no rank there.
/// Scalar fitness is `1 / best rank`; skill factor is the task of the best
/// rank, lowest task id on ties.
pub fn assign_ranks_and_skill(members: &mut [Individual], num_tasks: usize) -> Result<()> {
    for (i, m) in members.iter().enumerate() {
        if m.factorial_costs.iter().all(Option::is_none) {
            return Err(Error::InvalidState(format!(
                "individual {i} has no factorial cost on any task"
            )));
        }
    }
    let mut order: Vec<usize> = Vec::with_capacity(members.len());
    for task in 0..num_tasks {
        order.clear();
        order.extend((0..members.len()).filter(|&i| members[i].factorial_costs[task].is_some()));
        order.sort_by(|&a, &b| {
            let ca = members[a].factorial_costs[task].unwrap();
            let cb = members[b].factorial_costs[task].unwrap();
            ca.total_cmp(&cb)
        });
        for m in members.iter_mut() {
            m.factorial_ranks[task] = None;
        }
        for (rank0, &i) in order.iter().enumerate() {
            members[i].factorial_ranks[task] = Some(rank0 + 1);
        }
    }
    for m in members.iter_mut() {
        let (skill, rank) = m
            .factorial_ranks
            .iter()
            .enumerate()
            .filter_map(|(t, r)| r.map(|r| (t, r)))
            .min_by_key(|&(t, r)| (r, t))
            .expect("checked above: at least one cost");
        m.skill_factor = skill;
        m.scalar_fitness = 1.0 / rank as f64;
    }
    Ok(())
}

/// Elitist survivor selection over `current` plus the new members of
/// `intermediate`.
///
/// An intermediate member whose genotype already occurs in the pool is merged
/// into the existing entry instead of being added, so unchanged parents and
/// backups never occupy two slots. Survivors keep pool order and come back
/// with freshly assigned ranks.
pub fn select_fittest(
    current: Population,
    intermediate: Vec<Individual>,
    n: usize,
    num_tasks: usize,
) -> Result<Population> {
    let mut pool = current.members;
    for ind in intermediate {
        match pool.iter_mut().find(|p| p.genotype == ind.genotype) {
            Some(existing) => existing.absorb(&ind),
            None => pool.push(ind),
        }
    }
    if pool.len() < n {
        return Err(Error::InvalidState(format!(
            "selection pool holds {} individuals, need {n}",
            pool.len()
        )));
    }
    assign_ranks_and_skill(&mut pool, num_tasks)?;

    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&pool[a], &pool[b]);
        pb.scalar_fitness
            .total_cmp(&pa.scalar_fitness)
            .then_with(|| pa.skill_cost().total_cmp(&pb.skill_cost()))
    });
    let mut keep = vec![false; pool.len()];
    for &i in &order[..n] {
        keep[i] = true;
    }
    let mut members: Vec<Individual> = pool
        .into_iter()
        .zip(keep)
        .filter_map(|(ind, k)| k.then_some(ind))
        .collect();
    assign_ranks_and_skill(&mut members, num_tasks)?;
    Ok(Population { members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{counting_tasks, onemax_task};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn with_costs(costs: &[Option<f64>]) -> Individual {
        let mut ind = Individual::new(vec![0], costs.len());
        ind.factorial_costs = costs.to_vec();
        ind
    }

    #[test]
    fn ranks_follow_ascending_cost() {
        let mut members: Vec<_> = [5.0, 2.0, 9.0]
            .iter()
            .map(|&c| with_costs(&[Some(c)]))
            .collect();
        assign_ranks_and_skill(&mut members, 1).unwrap();
        let ranks: Vec<_> = members.iter().map(|m| m.factorial_ranks[0]).collect();
        assert_eq!(ranks, vec![Some(2), Some(1), Some(3)]);
        assert_eq!(members[1].scalar_fitness, 1.0);
        assert_eq!(members[0].scalar_fitness, 0.5);
    }

    #[test]
    fn scalar_fitness_and_skill_from_best_rank() {
        // individual 0 ranks 3rd on task 0 and 2nd on task 1
        let mut members = vec![
            with_costs(&[Some(3.0), Some(2.0)]),
            with_costs(&[Some(1.0), Some(1.0)]),
            with_costs(&[Some(2.0), Some(3.0)]),
        ];
        assign_ranks_and_skill(&mut members, 2).unwrap();
        assert_eq!(members[0].factorial_ranks, vec![Some(3), Some(2)]);
        assert_eq!(members[0].scalar_fitness, 0.5);
        assert_eq!(members[0].skill_factor, 1);
    }

    #[test]
    fn skill_tie_goes_to_lowest_task() {
        let mut members: Vec<_> = (0..7)
            .map(|i| with_costs(&[Some(i as f64), Some(i as f64)]))
            .collect();
        assign_ranks_and_skill(&mut members, 2).unwrap();
        let last = &members[6];
        assert_eq!(last.factorial_ranks, vec![Some(7), Some(7)]);
        assert_eq!(last.scalar_fitness, 1.0 / 7.0);
        assert_eq!(last.skill_factor, 0);
    }

    #[test]
    fn equal_costs_rank_by_insertion_order() {
        let mut members: Vec<_> = (0..4).map(|_| with_costs(&[Some(1.0)])).collect();
        assign_ranks_and_skill(&mut members, 1).unwrap();
        let ranks: Vec<_> = members
            .iter()
            .map(|m| m.factorial_ranks[0].unwrap())
            .collect();
        assert_eq!(ranks, vec![1, 2, 3, 4]);
    }

    #[test]
    fn missing_costs_are_unranked() {
        let mut members = vec![
            with_costs(&[Some(4.0), None]),
            with_costs(&[None, Some(10.0)]),
            with_costs(&[Some(1.0), Some(0.0)]),
        ];
        assign_ranks_and_skill(&mut members, 2).unwrap();
        assert_eq!(members[0].factorial_ranks, vec![Some(2), None]);
        assert_eq!(members[1].factorial_ranks, vec![None, Some(2)]);
        assert_eq!(members[1].skill_factor, 1);
        assert_eq!(members[1].scalar_fitness, 0.5);
    }

    #[test]
    fn no_cost_anywhere_is_an_error() {
        let mut members = vec![with_costs(&[None, None])];
        assert!(matches!(
            assign_ranks_and_skill(&mut members, 2),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn init_counts_every_task_evaluation() {
        let (tasks, counter) = counting_tasks(2, 10);
        let mut ev = Evaluator::new(&tasks);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pop = initialize_population(&tasks, 100, &mut rng, &mut ev).unwrap();
        assert_eq!(pop.len(), 100);
        assert_eq!(ev.evaluations(), 200);
        assert_eq!(counter.get(), 200);
    }

    #[test]
    fn init_single_task() {
        let tasks = vec![onemax_task(0, 12)];
        let mut ev = Evaluator::new(&tasks);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let pop = initialize_population(&tasks, 128, &mut rng, &mut ev).unwrap();
        for m in &pop.members {
            assert_eq!(m.skill_factor, 0);
            assert_eq!(m.scalar_fitness, 1.0 / m.factorial_ranks[0].unwrap() as f64);
        }
    }

    #[test]
    fn init_is_deterministic_per_seed() {
        let tasks = vec![onemax_task(0, 8), onemax_task(1, 5)];
        let run = || {
            let mut ev = Evaluator::new(&tasks);
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            initialize_population(&tasks, 4, &mut rng, &mut ev).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn init_rejects_bad_configs() {
        let tasks = vec![onemax_task(0, 8)];
        let mut ev = Evaluator::new(&tasks);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in [0, 1, 7] {
            assert!(matches!(
                initialize_population(&tasks, n, &mut rng, &mut ev),
                Err(Error::Config(_))
            ));
        }
        assert!(matches!(
            initialize_population(&[], 4, &mut rng, &mut ev),
            Err(Error::Config(_))
        ));
    }

    fn random_pool(seed: u64, n: usize) -> (Population, Vec<TaskDefinition>) {
        let tasks = vec![onemax_task(0, 16), onemax_task(1, 16)];
        let mut ev = Evaluator::new(&tasks);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (
            initialize_population(&tasks, n, &mut rng, &mut ev).unwrap(),
            tasks,
        )
    }

    #[test]
    fn selection_truncates_by_scalar_fitness() {
        let (current, _) = random_pool(3, 100);
        let (extra, _) = random_pool(4, 50);
        let union_len = 150;
        let mut union = current.members.clone();
        union.extend(extra.members.clone());
        assign_ranks_and_skill(&mut union, 2).unwrap();
        let out = select_fittest(current, extra.members, 100, 2).unwrap();
        assert_eq!(out.len(), 100);
        assert_eq!(union.len(), union_len);
        let kept_min = union
            .iter()
            .filter(|u| out.members.iter().any(|m| m.genotype == u.genotype))
            .map(|u| u.scalar_fitness)
            .fold(f64::INFINITY, f64::min);
        let dropped_max = union
            .iter()
            .filter(|u| !out.members.iter().any(|m| m.genotype == u.genotype))
            .map(|u| u.scalar_fitness)
            .fold(0.0, f64::max);
        assert!(kept_min >= dropped_max);
    }

    #[test]
    fn new_rank_one_survives() {
        let (current, _) = random_pool(5, 20);
        let mut star = Individual::new(vec![1; 16], 2);
        star.factorial_costs[1] = Some(-1.0);
        star.skill_factor = 1;
        let out = select_fittest(current, vec![star.clone()], 20, 2).unwrap();
        let kept = out
            .members
            .iter()
            .find(|m| m.genotype == star.genotype)
            .unwrap();
        assert_eq!(kept.scalar_fitness, 1.0);
        assert_eq!(kept.skill_factor, 1);
    }

    #[test]
    fn selecting_from_identical_pools_is_idempotent() {
        let (current, _) = random_pool(6, 30);
        let out = select_fittest(current.clone(), current.members.clone(), 30, 2).unwrap();
        assert_eq!(out, current);
    }

    #[test]
    fn undersized_pool_is_an_error() {
        let (current, _) = random_pool(8, 10);
        assert!(matches!(
            select_fittest(current, vec![], 12, 2),
            Err(Error::InvalidState(_))
        ));
    }
}
