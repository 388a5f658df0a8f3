use rayon::prelude::*;

use super::config::{ExperimentConfig, Mode};
use crate::mfo::{run_mfltga, RunRecord, TraceEntry};
use crate::task::TaskDefinition;
use crate::Result;

/// Runs every task on its own (single-task LTGA), each with the full budget.
/// Returns records indexed `[task][run]`; task ids in the records refer to
/// the position in `tasks`.
pub fn run_st_with(
    tasks: &[TaskDefinition],
    cfg: &ExperimentConfig,
) -> Result<Vec<Vec<RunRecord>>> {
    cfg.validate_run_params()?;
    tasks
        .iter()
        .map(|task| {
            let alone = [TaskDefinition {
                id: 0,
                ..task.clone()
            }];
            (0..cfg.runs)
                .into_par_iter()
                .map(|r| {
                    let mut rec = run_mfltga(&alone, &cfg.engine_config(r))?;
                    rec.tasks[0].task = task.id;
                    Ok(rec)
                })
                .collect()
        })
        .collect()
}

/// One MF-LTGA run per seed over all tasks, sharing one budget.
pub fn run_mt_with(tasks: &[TaskDefinition], cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate_run_params()?;
    (0..cfg.runs)
        .into_par_iter()
        .map(|r| run_mfltga(tasks, &cfg.engine_config(r)))
        .collect()
}

pub fn run_st(cfg: &ExperimentConfig) -> Result<Vec<Vec<RunRecord>>> {
    run_st_with(&cfg.build_tasks()?, cfg)
}

pub fn run_mt(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    run_mt_with(&cfg.build_tasks()?, cfg)
}

/// Runs the configured mode and returns one record per run covering all
/// tasks. ST runs of the same seed are combined with [`combine_single_task`].
pub fn run_mode_with(tasks: &[TaskDefinition], cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    match cfg.mode {
        Mode::Mt => run_mt_with(tasks, cfg),
        Mode::St => {
            let per_task = run_st_with(tasks, cfg)?;
            Ok((0..cfg.runs)
                .map(|r| {
                    let parts: Vec<&RunRecord> = per_task.iter().map(|runs| &runs[r]).collect();
                    combine_single_task(&parts)
                })
                .collect())
        }
    }
}

/// Joins single-task records of one seed into a record over all tasks.
/// Trace entries are aligned by generation; a task that already stopped
/// keeps its last value. Evaluations are summed over tasks, which is what
/// solving them one after the other would cost.
pub fn combine_single_task(parts: &[&RunRecord]) -> RunRecord {
    let mut generations: Vec<usize> = parts
        .iter()
        .flat_map(|p| p.trace.iter().map(|t| t.generation))
        .collect();
    generations.sort_unstable();
    generations.dedup();

    let trace = generations
        .into_iter()
        .map(|g| {
            let mut evaluations = 0;
            let mut best = Vec::with_capacity(parts.len());
            for p in parts {
                let at = p
                    .trace
                    .iter()
                    .take_while(|t| t.generation <= g)
                    .last()
                    .unwrap_or(&p.trace[0]);
                evaluations += at.evaluations;
                best.push(at.best[0]);
            }
            TraceEntry {
                generation: g,
                evaluations,
                best,
            }
        })
        .collect();

    RunRecord {
        seed: parts.first().map_or(0, |p| p.seed),
        tasks: parts.iter().map(|p| p.tasks[0].clone()).collect(),
        evaluations: parts.iter().map(|p| p.evaluations).sum(),
        generations: parts.iter().map(|p| p.generations).max().unwrap_or(0),
        wall_time_secs: parts.iter().map(|p| p.wall_time_secs).sum(),
        trace,
    }
}
