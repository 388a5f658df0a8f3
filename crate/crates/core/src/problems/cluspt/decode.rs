//! Priority-gene decoder for clustered shortest-path trees.
//!
//! Gene `v` is the priority of vertex `v`. The tree is grown one cluster at a
//! time, starting with the source's cluster entered at the source:
//!
//! 1. Among vertices of clusters not yet in the tree that have an edge into
//!    the tree, the one with the highest priority (lowest id on ties) becomes
//!    the entry of its cluster.
//! 2. The entry hangs off the tree vertex `x` minimizing `d(s, x) + w(x, entry)`
//!    (lowest id on ties).
//! 3. The whole cluster is then spanned by a shortest-path tree of its induced
//!    subgraph rooted at the entry.
//!
//! Every cluster is entered exactly once and spanned internally, so the
//! induced subtrees are connected by construction.

use serde::{Deserialize, Serialize};

use super::graph::ClusteredGraph;
use crate::task::Gene;
use crate::{Error, Result};

/// Spanning tree rooted at the source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeSolution {
    /// Parent of each vertex; `None` for the source.
    pub parent: Vec<Option<usize>>,
    /// Tree distance from the source.
    pub dist: Vec<f64>,
    /// Sum of `dist`.
    pub objective: f64,
}

impl TreeSolution {
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
    }
}

/// Sum of root-to-vertex tree distances.
pub fn objective(sol: &TreeSolution) -> f64 {
    sol.dist.iter().sum()
}

pub fn decode(graph: &ClusteredGraph, genotype: &[Gene]) -> Result<TreeSolution> {
    if genotype.len() < graph.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: graph.vertex_count(),
            found: genotype.len(),
        });
    }
    Ok(decode_unchecked(graph, genotype))
}

pub(crate) fn decode_unchecked(graph: &ClusteredGraph, priority: &[Gene]) -> TreeSolution {
    let n = graph.vertex_count();
    let mut parent = vec![None; n];
    let mut dist = vec![f64::INFINITY; n];
    let mut in_tree = vec![false; n];

    let s = graph.source();
    dist[s] = 0.0;
    span_cluster(graph, s, &mut parent, &mut dist, &mut in_tree);

    for _ in 1..graph.cluster_count() {
        let mut entry: Option<usize> = None;
        for y in (0..n).filter(|&y| !in_tree[y]) {
            if !graph.neighbors(y).iter().any(|&x| in_tree[x]) {
                continue;
            }
            if entry.is_none_or(|e| priority[y] > priority[e]) {
                entry = Some(y);
            }
        }
        let y = entry.expect("connected graph always has a frontier vertex");
        let (mut best_x, mut best_d) = (usize::MAX, f64::INFINITY);
        for &x in graph.neighbors(y) {
            if in_tree[x] {
                let d = dist[x] + graph.weight(x, y).unwrap();
                if d < best_d {
                    (best_x, best_d) = (x, d);
                }
            }
        }
        parent[y] = Some(best_x);
        dist[y] = best_d;
        span_cluster(graph, y, &mut parent, &mut dist, &mut in_tree);
    }

    let objective = dist.iter().sum();
    TreeSolution {
        parent,
        dist,
        objective,
    }
}

/// Dijkstra inside the entry's cluster; `dist[entry]` must already be set.
/// Ties go to the lower vertex id, then to the lower parent id.
fn span_cluster(
    graph: &ClusteredGraph,
    entry: usize,
    parent: &mut [Option<usize>],
    dist: &mut [f64],
    in_tree: &mut [bool],
) {
    let cluster = graph.cluster_of(entry);
    let members = &graph.clusters()[cluster];
    let mut tentative_parent: Vec<Option<usize>> = vec![None; members.len()];
    let mut tentative: Vec<f64> = members
        .iter()
        .map(|&v| {
            if v == entry {
                dist[entry]
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let mut settled = vec![false; members.len()];
    let local = |v: usize| members.binary_search(&v).ok();

    for _ in 0..members.len() {
        let mut pick: Option<usize> = None;
        for i in 0..members.len() {
            if !settled[i]
                && tentative[i].is_finite()
                && pick.is_none_or(|p| tentative[i] < tentative[p])
            {
                pick = Some(i);
            }
        }
        let Some(i) = pick else { break };
        settled[i] = true;
        let v = members[i];
        in_tree[v] = true;
        dist[v] = tentative[i];
        if v != entry {
            parent[v] = tentative_parent[i];
        }
        for &u in graph.neighbors(v) {
            let Some(j) = local(u) else { continue };
            if settled[j] {
                continue;
            }
            let cand = dist[v] + graph.weight(v, u).unwrap();
            if cand < tentative[j] {
                tentative[j] = cand;
                tentative_parent[j] = Some(v);
            }
        }
    }
}
