//! Exhaustive baselines for small instances.
//!
//! These share no code with the problem modules: the trap is re-derived on
//! bit masks and clustered trees are enumerated as raw parent arrays.

use serde::{Deserialize, Serialize};

use crate::problems::cluspt::ClusteredGraph;
use crate::problems::dtf::TrapSpec;
use crate::{Error, Result};

pub const MAX_DTF_BITS: usize = 22;
pub const MAX_CLUSPT_VERTICES: usize = 9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub optimum_cost: f64,
    pub optimum_count: u64,
    pub enumerated: u64,
}

/// Trap cost of bit string `x` (bit `i` is gene `i`), as `m * k - value`.
pub fn trap_cost_bits(k: usize, m: usize, x: u64) -> u64 {
    let block_mask = (1u64 << k) - 1;
    let value: u64 = (0..m)
        .map(|b| {
            let ones = ((x >> (b * k)) & block_mask).count_ones() as u64;
            if ones == k as u64 {
                k as u64
            } else {
                k as u64 - 1 - ones
            }
        })
        .sum();
    (m * k) as u64 - value
}

pub fn exhaustive_dtf(spec: TrapSpec) -> Result<OracleResult> {
    let l = spec.length();
    if l > MAX_DTF_BITS {
        return Err(Error::TooLarge(format!(
            "trap length {l} exceeds {MAX_DTF_BITS} bits"
        )));
    }
    let (mut best, mut count) = (u64::MAX, 0u64);
    let total = 1u64 << l;
    for x in 0..total {
        let c = trap_cost_bits(spec.k(), spec.m(), x);
        if c < best {
            best = c;
            count = 1;
        } else if c == best {
            count += 1;
        }
    }
    Ok(OracleResult {
        optimum_cost: best as f64,
        optimum_count: count,
        enumerated: total,
    })
}

struct TreeSearch<'a> {
    graph: &'a ClusteredGraph,
    order: Vec<usize>,
    parent: Vec<usize>,
    best: f64,
    count: u64,
    enumerated: u64,
}

impl TreeSearch<'_> {
    fn assign(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.enumerated += 1;
            if let Some(cost) = self.cost() {
                if cost < self.best - 1e-9 {
                    self.best = cost;
                    self.count = 1;
                } else if (cost - self.best).abs() <= 1e-9 {
                    self.count += 1;
                }
            }
            return;
        }
        let v = self.order[depth];
        for i in 0..self.graph.neighbors(v).len() {
            self.parent[v] = self.graph.neighbors(v)[i];
            self.assign(depth + 1);
        }
    }

    /// Objective of the current parent array, or `None` if it is not a tree
    /// or splits a cluster.
    fn cost(&self) -> Option<f64> {
        let g = self.graph;
        let n = g.vertex_count();
        let s = g.source();
        let mut depth_cost = vec![f64::NAN; n];
        depth_cost[s] = 0.0;
        for start in 0..n {
            let mut path = Vec::new();
            let mut v = start;
            while depth_cost[v].is_nan() {
                if path.len() > n {
                    return None;
                }
                path.push(v);
                v = self.parent[v];
            }
            for &u in path.iter().rev() {
                let p = self.parent[u];
                depth_cost[u] = depth_cost[p] + g.weight(p, u)?;
            }
        }
        // a tree restricted to a cluster is connected iff it keeps |C| - 1 edges
        for members in g.clusters() {
            let inner = members
                .iter()
                .filter(|&&v| v != s && g.cluster_of(self.parent[v]) == g.cluster_of(v))
                .count();
            if inner + 1 != members.len() {
                return None;
            }
        }
        Some(depth_cost.iter().sum())
    }
}

/// Minimum clustered-tree objective by enumerating every parent array.
pub fn exhaustive_cluspt(graph: &ClusteredGraph) -> Result<OracleResult> {
    let n = graph.vertex_count();
    if n > MAX_CLUSPT_VERTICES {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceed {MAX_CLUSPT_VERTICES}"
        )));
    }
    let mut search = TreeSearch {
        graph,
        order: (0..n).filter(|&v| v != graph.source()).collect(),
        parent: vec![usize::MAX; n],
        best: f64::INFINITY,
        count: 0,
        enumerated: 0,
    };
    search.assign(0);
    if search.count == 0 {
        return Err(Error::InvalidState(format!(
            "instance '{}' admits no clustered spanning tree",
            graph.name()
        )));
    }
    Ok(OracleResult {
        optimum_cost: search.best,
        optimum_count: search.count,
        enumerated: search.enumerated,
    })
}
