use serde::{Deserialize, Serialize};

use super::config::Mode;
use super::metrics::mean;
use crate::mfo::RunRecord;
use crate::{Error, Result};

/// Aggregate over all runs of one task in one mode. `task` is 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub instance: String,
    pub mode: Mode,
    pub task: usize,
    pub runs: usize,
    pub num_opt: usize,
    /// Mean over successful runs of the evaluations spent on this task up to
    /// its first optimal evaluation.
    pub mean_num_evals: Option<f64>,
    pub bf: f64,
    pub avg: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    pub rows: Vec<SummaryRow>,
}

impl SummaryTable {
    pub fn row(&self, mode: Mode, task: usize) -> Option<&SummaryRow> {
        self.rows.iter().find(|r| r.mode == mode && r.task == task)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedRow {
    pub generation: usize,
    pub evaluations: u64,
    pub best: Vec<f64>,
    pub normalized: Vec<f64>,
    pub average: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedTrace {
    pub mode: Mode,
    pub run: usize,
    pub seed: u64,
    pub rows: Vec<NormalizedRow>,
}

impl NormalizedTrace {
    pub fn final_generation(&self) -> usize {
        self.rows.last().map_or(0, |r| r.generation)
    }

    /// Averaged normalized objective at `generation`, using the latest row
    /// not after it.
    pub fn average_at(&self, generation: usize) -> Option<f64> {
        self.rows
            .iter()
            .take_while(|r| r.generation <= generation)
            .last()
            .map(|r| r.average)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub table: SummaryTable,
    pub traces: Vec<NormalizedTrace>,
}

/// `(value - best) / (init - best)` clamped to `[0, 1]`; 0 when the run
/// started at the best value.
pub fn normalize(value: f64, init: f64, best: f64) -> f64 {
    let span = init - best;
    if span <= 0.0 {
        return 0.0;
    }
    ((value - best) / span).clamp(0.0, 1.0)
}

/// Aggregates records per mode and task, and normalizes every trace against
/// the best cost seen for each task over all modes and runs. Every record
/// must cover the same task list; the initial value of a trace is its own
/// generation-0 best.
pub fn summarize(results: &[(Mode, Vec<RunRecord>)]) -> Result<Summary> {
    let records: Vec<&RunRecord> = results.iter().flat_map(|(_, r)| r).collect();
    let Some(first) = records.first() else {
        return Err(Error::InvalidState("no run records to summarize".into()));
    };
    let k = first.tasks.len();
    if let Some(bad) = records
        .iter()
        .find(|r| r.tasks.len() != k || r.trace.is_empty())
    {
        return Err(Error::InvalidState(format!(
            "record with seed {} does not match the first record's {k} tasks or has no trace",
            bad.seed
        )));
    }
    let best_known: Vec<f64> = (0..k)
        .map(|j| {
            records
                .iter()
                .map(|r| r.tasks[j].best_found)
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    let mut table = SummaryTable::default();
    let mut traces = Vec::new();
    for (mode, runs) in results {
        if runs.is_empty() {
            return Err(Error::InvalidState(format!(
                "no runs recorded for mode {mode}"
            )));
        }
        for j in 0..k {
            let found: Vec<f64> = runs.iter().map(|r| r.tasks[j].best_found).collect();
            let evals: Vec<f64> = runs
                .iter()
                .filter_map(|r| r.tasks[j].task_evals_to_success.map(|e| e as f64))
                .collect();
            table.rows.push(SummaryRow {
                instance: runs[0].tasks[j].name.clone(),
                mode: *mode,
                task: j + 1,
                runs: runs.len(),
                num_opt: runs.iter().filter(|r| r.tasks[j].optimum_found).count(),
                mean_num_evals: mean(&evals),
                bf: found.iter().copied().fold(f64::INFINITY, f64::min),
                avg: mean(&found).unwrap_or(f64::NAN),
            });
        }
        for (run, rec) in runs.iter().enumerate() {
            let init = &rec.trace[0].best;
            let rows = rec
                .trace
                .iter()
                .map(|t| {
                    let normalized: Vec<f64> = (0..k)
                        .map(|j| normalize(t.best[j], init[j], best_known[j]))
                        .collect();
                    NormalizedRow {
                        generation: t.generation,
                        evaluations: t.evaluations,
                        best: t.best.clone(),
                        average: mean(&normalized).unwrap_or(0.0),
                        normalized,
                    }
                })
                .collect();
            traces.push(NormalizedTrace {
                mode: *mode,
                run,
                seed: rec.seed,
                rows,
            });
        }
    }
    Ok(Summary { table, traces })
}
