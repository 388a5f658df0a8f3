//! Small objectives shared by unit tests.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::task::{Gene, Objective, TaskDefinition};

/// Counts zero genes; optimum 0 at all-ones.
pub struct OneMax {
    pub dim: usize,
    pub calls: Arc<AtomicU64>,
}

impl Objective for OneMax {
    fn name(&self) -> String {
        format!("onemax_{}", self.dim)
    }
    fn dimension(&self) -> usize {
        self.dim
    }
    fn alphabet_size(&self) -> usize {
        2
    }
    fn evaluate(&self, genes: &[Gene]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        genes[..self.dim].iter().filter(|&&g| g == 0).count() as f64
    }
    fn known_optimum(&self) -> Option<f64> {
        Some(0.0)
    }
}

#[derive(Clone, Default)]
pub struct CallCounter(pub Arc<AtomicU64>);

impl CallCounter {
    pub fn get(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

pub fn onemax_task(id: usize, dim: usize) -> TaskDefinition {
    TaskDefinition::new(
        id,
        Arc::new(OneMax {
            dim,
            calls: Arc::default(),
        }),
    )
}

/// `k` OneMax tasks of dimension `dim` sharing one call counter.
pub fn counting_tasks(k: usize, dim: usize) -> (Vec<TaskDefinition>, CallCounter) {
    let counter = CallCounter::default();
    let tasks = (0..k)
        .map(|id| {
            TaskDefinition::new(
                id,
                Arc::new(OneMax {
                    dim,
                    calls: counter.0.clone(),
                }),
            )
        })
        .collect();
    (tasks, counter)
}
