//! Seeded experiments: single-task (ST) and multitask (MT) runs, summary
//! metrics, normalized convergence traces and CSV/JSON output.

mod config;
mod metrics;
mod output;
mod runner;
mod summary;

pub use config::{ExperimentConfig, Mode, ProblemSpec, SEED_POLICY};
pub use metrics::{mean, paired_wins, performance_improvement};
pub use output::{read_summary, write_all, write_config, write_summary, write_trace};
pub use runner::{combine_single_task, run_mode_with, run_mt, run_mt_with, run_st, run_st_with};
pub use summary::{
    normalize, summarize, NormalizedRow, NormalizedTrace, Summary, SummaryRow, SummaryTable,
};

use crate::mfo::RunRecord;
use crate::Result;

#[derive(Clone, Debug)]
pub struct Experiment {
    pub records: Vec<RunRecord>,
    pub summary: Summary,
}

/// Runs the configured mode, summarizes it and, when `out_path` is set,
/// writes the result files there.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment> {
    cfg.validate()?;
    let tasks = cfg.build_tasks()?;
    let records = run_mode_with(&tasks, cfg)?;
    let summary = summarize(&[(cfg.mode, records.clone())])?;
    if let Some(dir) = &cfg.out_path {
        write_all(dir, cfg, &summary.table, &summary.traces)?;
    }
    Ok(Experiment { records, summary })
}
