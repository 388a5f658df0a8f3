use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linkage::build_all_trees;
use crate::mfo::{initialize_population, select_fittest, Evaluator};
use crate::task::{validate_tasks, TaskDefinition, TaskId};
use crate::variation::{assortative_mating, MatingParams};
use crate::{Error, Result};

/// Parameters of a single seeded run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub pop_size: usize,
    pub max_evals: u64,
    pub max_p: u32,
    pub mutation_rate: f64,
    /// Random mating probability. Recorded for completeness; the mating
    /// scheme always pairs uniformly and never consults it.
    pub rmp: f64,
    pub trace_every: usize,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            pop_size: 100,
            max_evals: 1_000_000,
            max_p: 10,
            mutation_rate: 0.05,
            rmp: 0.5,
            trace_every: 1,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub generation: usize,
    pub evaluations: u64,
    /// Best cost evaluated so far, per task.
    pub best: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskOutcome {
    pub task: TaskId,
    pub name: String,
    pub best_found: f64,
    /// Run-wide evaluation count when the known optimum was first hit.
    pub evals_to_success: Option<u64>,
    /// Evaluations spent on this task up to that hit.
    pub task_evals_to_success: Option<u64>,
    /// Evaluations spent on this task over the whole run.
    pub task_evaluations: u64,
    pub optimum_found: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub tasks: Vec<TaskOutcome>,
    pub evaluations: u64,
    pub generations: usize,
    pub wall_time_secs: f64,
    pub trace: Vec<TraceEntry>,
}

impl RunRecord {
    /// The record with wall time zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> RunRecord {
        RunRecord {
            wall_time_secs: 0.0,
            ..self.clone()
        }
    }

    pub fn final_generation(&self) -> usize {
        self.trace.last().map_or(0, |t| t.generation)
    }
}

/// Runs MF-LTGA over `tasks` until the evaluation budget is spent or every
/// task with a known optimum has hit it. Stopping is checked between
/// generations, so the budget can be overrun by at most one generation.
pub fn run_mfltga(tasks: &[TaskDefinition], config: &EngineConfig) -> Result<RunRecord> {
    validate_tasks(tasks)?;
    if config.trace_every == 0 {
        return Err(Error::Config("trace_every must be >= 1".into()));
    }
    if !(0.0..=1.0).contains(&config.mutation_rate) {
        return Err(Error::Config(format!(
            "mutation rate {} outside [0, 1]",
            config.mutation_rate
        )));
    }
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut evaluator = Evaluator::new(tasks);
    let mut pop = initialize_population(tasks, config.pop_size, &mut rng, &mut evaluator)?;
    let params = MatingParams {
        max_p: config.max_p,
        mutation_rate: config.mutation_rate,
    };

    let snapshot = |generation: usize, ev: &Evaluator| TraceEntry {
        generation,
        evaluations: ev.evaluations(),
        best: ev.best_all(),
    };
    let mut trace = vec![snapshot(0, &evaluator)];
    let mut generation = 0;
    while evaluator.evaluations() < config.max_evals && !evaluator.all_solved() {
        let trees = build_all_trees(&pop, tasks)?;
        let outcome = assortative_mating(&pop, &trees, &params, &mut rng, &mut evaluator)?;
        pop = select_fittest(
            pop,
            outcome.into_intermediate(),
            config.pop_size,
            tasks.len(),
        )?;
        generation += 1;
        if generation % config.trace_every == 0 {
            trace.push(snapshot(generation, &evaluator));
        }
    }
    if trace.last().map(|t| t.generation) != Some(generation) {
        trace.push(snapshot(generation, &evaluator));
    }

    let outcomes = tasks
        .iter()
        .map(|t| TaskOutcome {
            task: t.id,
            name: t.name(),
            best_found: evaluator.best(t.id),
            evals_to_success: evaluator.success_at(t.id),
            task_evals_to_success: evaluator.task_success_at(t.id),
            task_evaluations: evaluator.task_evaluations(t.id),
            optimum_found: evaluator.success_at(t.id).is_some(),
        })
        .collect();
    Ok(RunRecord {
        seed: config.seed,
        tasks: outcomes,
        evaluations: evaluator.evaluations(),
        generations: generation,
        wall_time_secs: started.elapsed().as_secs_f64(),
        trace,
    })
}
