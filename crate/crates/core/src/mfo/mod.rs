//! Multifactorial population machinery and the MF-LTGA generational loop.

mod engine;
mod evaluator;
mod individual;
mod population;

pub use engine::{run_mfltga, EngineConfig, RunRecord, TaskOutcome, TraceEntry};
pub use evaluator::Evaluator;
pub use individual::Individual;
pub use population::{assign_ranks_and_skill, initialize_population, select_fittest, Population};
