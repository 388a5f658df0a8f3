use std::fmt;

use super::decode::TreeSolution;
use super::graph::ClusteredGraph;

/// A way in which a [`TreeSolution`] fails to be a feasible clustered tree.
/// Indices are 0-based; `Display` prints them 1-based.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    WrongLength { expected: usize, found: usize },
    SourceHasParent,
    MissingParent { vertex: usize },
    EdgeNotInGraph { u: usize, v: usize },
    NotATree,
    ClusterDisconnected { cluster: usize },
    DistanceMismatch { vertex: usize },
    ObjectiveMismatch { stored: f64, recomputed: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::WrongLength { expected, found } => {
                write!(f, "parent array has {found} entries, expected {expected}")
            }
            Violation::SourceHasParent => write!(f, "source has a parent"),
            Violation::MissingParent { vertex } => {
                write!(f, "vertex {} has no parent", vertex + 1)
            }
            Violation::EdgeNotInGraph { u, v } => {
                write!(f, "edge ({}, {}) is not in the graph", u + 1, v + 1)
            }
            Violation::NotATree => write!(f, "not a tree"),
            Violation::ClusterDisconnected { cluster } => {
                write!(f, "cluster {} induced subtree disconnected", cluster + 1)
            }
            Violation::DistanceMismatch { vertex } => {
                write!(f, "stored distance of vertex {} is wrong", vertex + 1)
            }
            Violation::ObjectiveMismatch { stored, recomputed } => {
                write!(f, "objective {stored} differs from recomputed {recomputed}")
            }
        }
    }
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Checks spanning-tree structure, edge membership, per-cluster connectivity
/// and the stored distances. An empty list means the solution is feasible.
pub fn validate(graph: &ClusteredGraph, sol: &TreeSolution) -> Vec<Violation> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    if sol.parent.len() != n || sol.dist.len() != n {
        out.push(Violation::WrongLength {
            expected: n,
            found: sol.parent.len(),
        });
        return out;
    }
    let s = graph.source();
    if sol.parent[s].is_some() {
        out.push(Violation::SourceHasParent);
    }
    for v in (0..n).filter(|&v| v != s) {
        match sol.parent[v] {
            None => out.push(Violation::MissingParent { vertex: v }),
            Some(p) if p >= n || graph.weight(p, v).is_none() => {
                out.push(Violation::EdgeNotInGraph { u: p, v })
            }
            Some(_) => {}
        }
    }
    if !out.is_empty() {
        return out;
    }

    // every vertex must reach the source within n steps
    let is_tree = (0..n).all(|start| {
        let mut v = start;
        for _ in 0..n {
            match sol.parent[v] {
                None => return v == s,
                Some(p) => v = p,
            }
        }
        false
    });
    if !is_tree {
        out.push(Violation::NotATree);
    }

    let mut uf: Vec<usize> = (0..n).collect();
    for (p, v) in sol.edges() {
        if graph.cluster_of(p) == graph.cluster_of(v) {
            let (a, b) = (find(&mut uf, p), find(&mut uf, v));
            uf[a] = b;
        }
    }
    for (c, members) in graph.clusters().iter().enumerate() {
        let root = find(&mut uf, members[0]);
        if members.iter().any(|&v| find(&mut uf, v) != root) {
            out.push(Violation::ClusterDisconnected { cluster: c });
        }
    }

    if is_tree {
        let recomputed = tree_distances(graph, sol);
        for (v, (&r, &d)) in recomputed.iter().zip(&sol.dist).enumerate() {
            if !close(r, d) {
                out.push(Violation::DistanceMismatch { vertex: v });
            }
        }
        let total: f64 = recomputed.iter().sum();
        if !close(total, sol.objective) {
            out.push(Violation::ObjectiveMismatch {
                stored: sol.objective,
                recomputed: total,
            });
        }
    }
    out
}

/// Distances from the source along parent pointers, computed by walking each
/// vertex's ancestor chain. Assumes the parent array is a tree.
fn tree_distances(graph: &ClusteredGraph, sol: &TreeSolution) -> Vec<f64> {
    let n = graph.vertex_count();
    let mut dist = vec![f64::NAN; n];
    dist[graph.source()] = 0.0;
    for start in 0..n {
        let mut chain = Vec::new();
        let mut v = start;
        while dist[v].is_nan() {
            chain.push(v);
            v = sol.parent[v].expect("checked above");
        }
        for &u in chain.iter().rev() {
            let p = sol.parent[u].unwrap();
            dist[u] = dist[p] + graph.weight(p, u).unwrap();
        }
    }
    dist
}
