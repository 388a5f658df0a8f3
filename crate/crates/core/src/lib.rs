//! Multifactorial linkage tree genetic algorithm (MF-LTGA).
//!
//! Several optimization tasks share one population in a unified genotype
//! space. Each generation learns a linkage tree per task from the members
//! that are best at it, recombines random parent pairs along the tree of one
//! of their tasks, and keeps the fittest by scalar fitness.
//!
//! Benchmarks: concatenated deceptive traps ([`problems::dtf`]) and the
//! clustered shortest-path tree problem ([`problems::cluspt`]). The
//! [`harness`] runs seeded single-task (LTGA) and multitask comparisons and
//! writes CSV/JSON results; [`oracle`] holds exhaustive baselines for small
//! instances.

pub mod error;
pub mod harness;
pub mod linkage;
pub mod mfo;
pub mod oracle;
pub mod problems;
pub mod task;
pub mod variation;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use task::{Gene, Objective, TaskDefinition, TaskId};
