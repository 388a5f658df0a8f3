use std::collections::VecDeque;
use std::fmt;

use crate::{Error, Result};

/// Structural defect found while building a [`ClusteredGraph`]. Vertex and
/// cluster indices are 0-based; `Display` prints them 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphIssue {
    Empty,
    VertexOutOfRange {
        cluster: usize,
        vertex: usize,
    },
    EmptyCluster {
        cluster: usize,
    },
    Overlap {
        vertex: usize,
        first: usize,
        second: usize,
    },
    Unassigned {
        vertex: usize,
    },
    SourceOutOfRange {
        source: usize,
    },
    EdgeOutOfRange {
        edge: usize,
    },
    SelfLoop {
        edge: usize,
    },
    DuplicateEdge {
        edge: usize,
    },
    BadWeight {
        edge: usize,
    },
    Disconnected,
    ClusterDisconnected {
        cluster: usize,
    },
}

impl fmt::Display for GraphIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphIssue::Empty => write!(f, "graph has no vertices"),
            GraphIssue::VertexOutOfRange { cluster, vertex } => {
                write!(
                    f,
                    "cluster {} lists unknown vertex {}",
                    cluster + 1,
                    vertex + 1
                )
            }
            GraphIssue::EmptyCluster { cluster } => write!(f, "cluster {} is empty", cluster + 1),
            GraphIssue::Overlap {
                vertex,
                first,
                second,
            } => write!(
                f,
                "vertex {} appears in clusters {} and {}: not a partition",
                vertex + 1,
                first + 1,
                second + 1
            ),
            GraphIssue::Unassigned { vertex } => {
                write!(
                    f,
                    "vertex {} belongs to no cluster: not a partition",
                    vertex + 1
                )
            }
            GraphIssue::SourceOutOfRange { source } => {
                write!(f, "source {} is not a vertex", source + 1)
            }
            GraphIssue::EdgeOutOfRange { edge } => {
                write!(f, "edge {} references an unknown vertex", edge + 1)
            }
            GraphIssue::SelfLoop { edge } => write!(f, "edge {} is a self-loop", edge + 1),
            GraphIssue::DuplicateEdge { edge } => write!(f, "edge {} is a duplicate", edge + 1),
            GraphIssue::BadWeight { edge } => {
                write!(f, "edge {} has a negative or non-finite weight", edge + 1)
            }
            GraphIssue::Disconnected => write!(f, "graph is not connected"),
            GraphIssue::ClusterDisconnected { cluster } => {
                write!(f, "cluster {} induces a disconnected subgraph", cluster + 1)
            }
        }
    }
}

/// Weighted undirected graph with a vertex partition and a source vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusteredGraph {
    name: String,
    n: usize,
    /// Dense `n * n` weights, `INFINITY` where there is no edge.
    weights: Vec<f64>,
    adjacency: Vec<Vec<usize>>,
    clusters: Vec<Vec<usize>>,
    cluster_of: Vec<usize>,
    source: usize,
}

impl ClusteredGraph {
    /// Builds and validates a graph from 0-based edges and clusters.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        edges: &[(usize, usize, f64)],
        clusters: Vec<Vec<usize>>,
        source: usize,
    ) -> Result<Self> {
        Self::build(name.into(), n, edges, clusters, source)
            .map_err(|issue| Error::Validation(issue.to_string()))
    }

    /// Complete graph over points with weights rounded to the nearest integer.
    pub fn euclidean(
        name: impl Into<String>,
        coords: &[(f64, f64)],
        clusters: Vec<Vec<usize>>,
        source: usize,
    ) -> Result<Self> {
        Self::new(
            name,
            coords.len(),
            &euclidean_edges(coords),
            clusters,
            source,
        )
    }

    pub(crate) fn build(
        name: String,
        n: usize,
        edges: &[(usize, usize, f64)],
        mut clusters: Vec<Vec<usize>>,
        source: usize,
    ) -> std::result::Result<Self, GraphIssue> {
        if n == 0 {
            return Err(GraphIssue::Empty);
        }
        let mut cluster_of = vec![usize::MAX; n];
        for (c, members) in clusters.iter_mut().enumerate() {
            if members.is_empty() {
                return Err(GraphIssue::EmptyCluster { cluster: c });
            }
            for &v in members.iter() {
                if v >= n {
                    return Err(GraphIssue::VertexOutOfRange {
                        cluster: c,
                        vertex: v,
                    });
                }
                if cluster_of[v] != usize::MAX {
                    return Err(GraphIssue::Overlap {
                        vertex: v,
                        first: cluster_of[v],
                        second: c,
                    });
                }
                cluster_of[v] = c;
            }
            members.sort_unstable();
        }
        if let Some(v) = cluster_of.iter().position(|&c| c == usize::MAX) {
            return Err(GraphIssue::Unassigned { vertex: v });
        }
        if source >= n {
            return Err(GraphIssue::SourceOutOfRange { source });
        }

        let mut weights = vec![f64::INFINITY; n * n];
        for v in 0..n {
            weights[v * n + v] = 0.0;
        }
        let mut adjacency = vec![Vec::new(); n];
        for (e, &(u, v, w)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphIssue::EdgeOutOfRange { edge: e });
            }
            if u == v {
                return Err(GraphIssue::SelfLoop { edge: e });
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(GraphIssue::BadWeight { edge: e });
            }
            if weights[u * n + v].is_finite() {
                return Err(GraphIssue::DuplicateEdge { edge: e });
            }
            weights[u * n + v] = w;
            weights[v * n + u] = w;
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        adjacency.iter_mut().for_each(|a| a.sort_unstable());

        let graph = Self {
            name,
            n,
            weights,
            adjacency,
            clusters,
            cluster_of,
            source,
        };
        if graph.reachable_within(None, source) != n {
            return Err(GraphIssue::Disconnected);
        }
        for (c, members) in graph.clusters.iter().enumerate() {
            if graph.reachable_within(Some(c), members[0]) != members.len() {
                return Err(GraphIssue::ClusterDisconnected { cluster: c });
            }
        }
        Ok(graph)
    }

    /// Number of vertices reachable from `start`, optionally without leaving
    /// one cluster.
    fn reachable_within(&self, cluster: Option<usize>, start: usize) -> usize {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut count = 0;
        while let Some(v) = queue.pop_front() {
            count += 1;
            for &u in &self.adjacency[v] {
                if !seen[u] && cluster.is_none_or(|c| self.cluster_of[u] == c) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        count
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    /// Neighbors in ascending id order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        let w = self.weights[u * self.n + v];
        (u != v && w.is_finite()).then_some(w)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// TSPLIB `EUC_2D` distance: Euclidean length rounded to the nearest integer.
pub fn euc_2d(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    ((dx * dx + dy * dy).sqrt() + 0.5).floor()
}

pub(crate) fn euclidean_edges(coords: &[(f64, f64)]) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::with_capacity(coords.len() * coords.len().saturating_sub(1) / 2);
    for u in 0..coords.len() {
        for v in (u + 1)..coords.len() {
            edges.push((u, v, euc_2d(coords[u], coords[v])));
        }
    }
    edges
}
