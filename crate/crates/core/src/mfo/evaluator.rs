use crate::mfo::Individual;
use crate::task::{Gene, TaskDefinition, TaskId};

/// Routes every objective call and keeps the run-wide counters: total
/// evaluations, evaluations per task, best cost seen per task, and when each
/// task's known optimum was first hit.
#[derive(Clone, Debug)]
pub struct Evaluator {
    tasks: Vec<TaskDefinition>,
    evaluations: u64,
    task_evaluations: Vec<u64>,
    best: Vec<f64>,
    /// `(run-wide count, task count)` at the first optimal evaluation.
    success_at: Vec<Option<(u64, u64)>>,
}

impl Evaluator {
    pub fn new(tasks: &[TaskDefinition]) -> Self {
        Self {
            tasks: tasks.to_vec(),
            evaluations: 0,
            task_evaluations: vec![0; tasks.len()],
            best: vec![f64::INFINITY; tasks.len()],
            success_at: vec![None; tasks.len()],
        }
    }

    pub fn tasks(&self) -> &[TaskDefinition] {
        &self.tasks
    }

    pub fn evaluate(&mut self, task: TaskId, genes: &[Gene]) -> f64 {
        let def = &self.tasks[task];
        let cost = def.objective.evaluate(genes);
        self.evaluations += 1;
        self.task_evaluations[task] += 1;
        if cost < self.best[task] {
            self.best[task] = cost;
        }
        if self.success_at[task].is_none() {
            if let Some(opt) = def.known_optimum {
                if reaches(cost, opt) {
                    self.success_at[task] = Some((self.evaluations, self.task_evaluations[task]));
                }
            }
        }
        cost
    }

    /// Evaluates `ind` on `task` and stores the factorial cost.
    pub fn evaluate_individual(&mut self, ind: &mut Individual, task: TaskId) -> f64 {
        let cost = self.evaluate(task, &ind.genotype);
        ind.factorial_costs[task] = Some(cost);
        cost
    }

    /// Returns the cached cost, evaluating only when it is missing.
    pub fn ensure_cost(&mut self, ind: &mut Individual, task: TaskId) -> f64 {
        match ind.factorial_costs[task] {
            Some(c) => c,
            None => self.evaluate_individual(ind, task),
        }
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn best(&self, task: TaskId) -> f64 {
        self.best[task]
    }

    pub fn best_all(&self) -> Vec<f64> {
        self.best.clone()
    }

    pub fn task_evaluations(&self, task: TaskId) -> u64 {
        self.task_evaluations[task]
    }

    /// Run-wide evaluation count at the first evaluation that hit the known
    /// optimum of `task`.
    pub fn success_at(&self, task: TaskId) -> Option<u64> {
        self.success_at[task].map(|(all, _)| all)
    }

    /// Evaluations of `task` alone up to and including its first optimal one.
    pub fn task_success_at(&self, task: TaskId) -> Option<u64> {
        self.success_at[task].map(|(_, own)| own)
    }

    /// True once every task with a known optimum has hit it. A run without
    /// any known optimum is never "solved".
    pub fn all_solved(&self) -> bool {
        let mut any = false;
        for (t, def) in self.tasks.iter().enumerate() {
            if def.known_optimum.is_some() {
                any = true;
                if self.success_at[t].is_none() {
                    return false;
                }
            }
        }
        any
    }
}

pub(crate) fn reaches(cost: f64, optimum: f64) -> bool {
    cost <= optimum + 1e-9 * optimum.abs().max(1.0)
}
