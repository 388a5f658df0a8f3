//! Clustered Shortest-Path Tree: find a spanning tree whose restriction to
//! every vertex cluster is connected, minimizing the summed tree distance
//! from the source to all vertices.

mod decode;
mod graph;
mod parse;
mod validate;

use std::sync::Arc;

pub use decode::{decode, objective, TreeSolution};
pub use graph::{euc_2d, ClusteredGraph, GraphIssue};
pub use parse::{load_instance, parse_instance};
pub use validate::{validate, Violation};

use crate::task::{Gene, Objective};

/// Engine adapter: the first `n` genes are vertex priorities.
#[derive(Clone, Debug)]
pub struct CluSpt {
    graph: Arc<ClusteredGraph>,
}

impl CluSpt {
    pub fn new(graph: Arc<ClusteredGraph>) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &ClusteredGraph {
        &self.graph
    }
}

impl Objective for CluSpt {
    fn name(&self) -> String {
        self.graph.name().to_string()
    }

    fn dimension(&self) -> usize {
        self.graph.vertex_count()
    }

    fn alphabet_size(&self) -> usize {
        self.graph.vertex_count().max(2)
    }

    fn evaluate(&self, genes: &[Gene]) -> f64 {
        decode::decode_unchecked(&self.graph, genes).objective
    }
}
