//! Optimization tasks as seen by the multifactorial engine.
//!
//! Every task is a minimization problem over a prefix of the unified
//! genotype. Problems plug in through [`Objective`].

use std::fmt;
use std::sync::Arc;

/// Categorical gene value in the unified search space.
pub type Gene = u32;

/// Zero-based task index. Task `0` is the first task of a run.
pub type TaskId = usize;

/// A minimization objective evaluated on the first `dimension()` genes of a
/// unified genotype.
pub trait Objective: Send + Sync {
    fn name(&self) -> String;

    fn dimension(&self) -> usize;

    /// Number of values each gene of this task can take.
    fn alphabet_size(&self) -> usize;

    /// Cost of `genes[..dimension()]`. Callers guarantee `genes.len() >= dimension()`.
    fn evaluate(&self, genes: &[Gene]) -> f64;

    /// Task-space view of a unified genotype used for linkage learning.
    fn decode(&self, genes: &[Gene]) -> Vec<Gene> {
        genes[..self.dimension()].to_vec()
    }

    fn known_optimum(&self) -> Option<f64> {
        None
    }
}

#[derive(Clone)]
pub struct TaskDefinition {
    pub id: TaskId,
    pub objective: Arc<dyn Objective>,
    /// Overrides the objective's own optimum when set.
    pub known_optimum: Option<f64>,
}

impl TaskDefinition {
    pub fn new(id: TaskId, objective: Arc<dyn Objective>) -> Self {
        let known_optimum = objective.known_optimum();
        Self {
            id,
            objective,
            known_optimum,
        }
    }

    pub fn with_known_optimum(mut self, optimum: Option<f64>) -> Self {
        self.known_optimum = optimum;
        self
    }

    pub fn dimension(&self) -> usize {
        self.objective.dimension()
    }

    pub fn alphabet_size(&self) -> usize {
        self.objective.alphabet_size()
    }

    pub fn name(&self) -> String {
        self.objective.name()
    }
}

impl fmt::Debug for TaskDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TaskDefinition")
            .field("id", &self.id)
            .field("name", &self.objective.name())
            .field("dimension", &self.dimension())
            .field("alphabet_size", &self.alphabet_size())
            .field("known_optimum", &self.known_optimum)
            .finish()
    }
}

/// Unified dimension and alphabet over a task list.
pub fn unified_space(tasks: &[TaskDefinition]) -> (usize, usize) {
    let dim = tasks.iter().map(|t| t.dimension()).max().unwrap_or(0);
    let alphabet = tasks.iter().map(|t| t.alphabet_size()).max().unwrap_or(0);
    (dim, alphabet)
}

pub(crate) fn validate_tasks(tasks: &[TaskDefinition]) -> crate::Result<()> {
    if tasks.is_empty() {
        return Err(crate::Error::Config("task list is empty".into()));
    }
    for (i, t) in tasks.iter().enumerate() {
        if t.id != i {
            return Err(crate::Error::Config(format!(
                "task at position {i} has id {}; ids must be 0..k in order",
                t.id
            )));
        }
        if t.dimension() == 0 {
            return Err(crate::Error::Config(format!("task {i} has dimension 0")));
        }
        if t.alphabet_size() < 2 {
            return Err(crate::Error::Config(format!(
                "task {i} has alphabet size {} (< 2)",
                t.alphabet_size()
            )));
        }
    }
    Ok(())
}
