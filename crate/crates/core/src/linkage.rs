//! Linkage learning: an information-theoretic distance between gene columns
//! and the agglomerative clustering that turns it into a linkage tree.
//!
//! The distance between genes `x` and `y` is
//! `2 - (H(x) + H(y)) / H(x, y)` with empirical entropies in bits, which is 0
//! for fully dependent genes and 1 for independent ones. Clusters are merged
//! bottom-up by average linkage (UPGMA).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::mfo::Population;
use crate::task::{Gene, TaskDefinition, TaskId};
use crate::{Error, Result};

/// Decoded task-space rows drawn from the individuals of one skill group.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskPopulation {
    pub task_id: TaskId,
    pub rows: Vec<Vec<Gene>>,
}

impl TaskPopulation {
    pub fn new(task_id: TaskId, rows: Vec<Vec<Gene>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            if let Some(bad) = rows.iter().find(|r| r.len() != first.len()) {
                return Err(Error::LengthMismatch {
                    expected: first.len(),
                    found: bad.len(),
                });
            }
        }
        Ok(Self { task_id, rows })
    }

    pub fn dimension(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    fn columns(&self) -> Vec<Vec<Gene>> {
        let dim = self.dimension();
        (0..dim)
            .map(|g| self.rows.iter().map(|r| r[g]).collect())
            .collect()
    }
}

/// `Σ c log2 c` over the distinct values of `codes`, using `scratch` as a
/// zeroed dense counter (it is left zeroed on return).
fn sum_c_log_c(codes: &[usize], scratch: &mut [u32]) -> f64 {
    for &c in codes {
        scratch[c] += 1;
    }
    let mut acc = 0.0;
    for &c in codes {
        let cnt = scratch[c];
        if cnt > 0 {
            let f = cnt as f64;
            acc += f * f.log2();
            scratch[c] = 0;
        }
    }
    acc
}

fn sum_c_log_c_sorted(mut codes: Vec<usize>) -> f64 {
    codes.sort_unstable();
    let mut acc = 0.0;
    for run in codes.chunk_by(|a, b| a == b) {
        let f = run.len() as f64;
        acc += f * f.log2();
    }
    acc
}

fn entropy_from(sum_clogc: f64, n: usize) -> f64 {
    let n = n as f64;
    (n.log2() - sum_clogc / n).max(0.0)
}

fn distance_from_entropies(hx: f64, hy: f64, hxy: f64) -> f64 {
    if hxy <= 0.0 {
        return 0.0;
    }
    (2.0 - (hx + hy) / hxy).clamp(0.0, 2.0)
}

const DENSE_LIMIT: usize = 1 << 20;

/// Entropy-based distance between two gene columns.
pub fn pairwise_distance(col_x: &[Gene], col_y: &[Gene]) -> Result<f64> {
    if col_x.len() != col_y.len() {
        return Err(Error::LengthMismatch {
            expected: col_x.len(),
            found: col_y.len(),
        });
    }
    if col_x.is_empty() {
        return Err(Error::EmptyPopulation("gene columns are empty".into()));
    }
    let n = col_x.len();
    let alphabet = col_x.iter().chain(col_y).copied().max().unwrap() as usize + 1;
    let hx = entropy_from(
        sum_c_log_c_sorted(col_x.iter().map(|&g| g as usize).collect()),
        n,
    );
    let hy = entropy_from(
        sum_c_log_c_sorted(col_y.iter().map(|&g| g as usize).collect()),
        n,
    );
    let joint: Vec<usize> = col_x
        .iter()
        .zip(col_y)
        .map(|(&x, &y)| x as usize * alphabet + y as usize)
        .collect();
    let hxy = entropy_from(sum_c_log_c_sorted(joint), n);
    Ok(distance_from_entropies(hx, hy, hxy))
}

/// Symmetric gene-to-gene distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ProximityMatrix {
    dim: usize,
    dist: Vec<f64>,
}

impl ProximityMatrix {
    pub fn from_population(pop: &TaskPopulation) -> Result<Self> {
        if pop.rows.is_empty() {
            return Err(Error::EmptyPopulation(format!(
                "task {} population has no rows",
                pop.task_id
            )));
        }
        let n = pop.rows.len();
        let columns = pop.columns();
        let dim = columns.len();
        let alphabet = columns
            .iter()
            .flatten()
            .copied()
            .max()
            .map_or(1, |m| m as usize + 1);
        let dense = alphabet * alphabet <= DENSE_LIMIT;
        let mut scratch = if dense {
            vec![0u32; alphabet * alphabet]
        } else {
            Vec::new()
        };

        let mut codes = vec![0usize; n];
        let mut entropy = vec![0.0; dim];
        for (g, col) in columns.iter().enumerate() {
            for (c, &v) in codes.iter_mut().zip(col) {
                *c = v as usize;
            }
            let s = if dense {
                sum_c_log_c(&codes, &mut scratch)
            } else {
                sum_c_log_c_sorted(codes.clone())
            };
            entropy[g] = entropy_from(s, n);
        }

        let mut dist = vec![0.0; dim * dim];
        for x in 0..dim {
            for y in (x + 1)..dim {
                for ((c, &a), &b) in codes.iter_mut().zip(&columns[x]).zip(&columns[y]) {
                    *c = a as usize * alphabet + b as usize;
                }
                let s = if dense {
                    sum_c_log_c(&codes, &mut scratch)
                } else {
                    sum_c_log_c_sorted(codes.clone())
                };
                let d = distance_from_entropies(entropy[x], entropy[y], entropy_from(s, n));
                dist[x * dim + y] = d;
                dist[y * dim + x] = d;
            }
        }
        Ok(Self { dim, dist })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.dim + j]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterNode {
    /// Sorted gene indices.
    pub members: Vec<usize>,
    pub children: Option<(usize, usize)>,
    pub merge_distance: Option<f64>,
}

/// Merge hierarchy over the genes of one task: `L` leaves followed by `L - 1`
/// internal nodes in merge order, the root last.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkageTree {
    pub task_id: TaskId,
    pub nodes: Vec<ClusterNode>,
    traversal: Vec<usize>,
}

impl LinkageTree {
    fn from_nodes(task_id: TaskId, nodes: Vec<ClusterNode>) -> Self {
        let root = nodes.len() - 1;
        let mut traversal: Vec<usize> = (0..root).collect();
        // largest clusters first, later merges first among equal sizes
        traversal.sort_by(|&a, &b| {
            nodes[b]
                .members
                .len()
                .cmp(&nodes[a].members.len())
                .then(b.cmp(&a))
        });
        Self {
            task_id,
            nodes,
            traversal,
        }
    }

    pub fn gene_count(&self) -> usize {
        self.nodes.len().div_ceil(2)
    }

    pub fn root(&self) -> &ClusterNode {
        self.nodes.last().expect("tree has at least one node")
    }

    /// Crossover masks in visiting order. The root is not a mask.
    pub fn masks(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.traversal
            .iter()
            .map(|&i| self.nodes[i].members.as_slice())
    }

    pub fn mask_count(&self) -> usize {
        self.traversal.len()
    }

    /// Indented text rendering, root first.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(self.nodes.len() - 1, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let node = &self.nodes[id];
            let members: Vec<String> = node.members.iter().map(usize::to_string).collect();
            let _ = write!(out, "{}[{}]", "  ".repeat(depth), members.join(","));
            if let Some(d) = node.merge_distance {
                let _ = write!(out, " d={d:.6}");
            }
            out.push('\n');
            if let Some((a, b)) = node.children {
                stack.push((b, depth + 1));
                stack.push((a, depth + 1));
            }
        }
        out
    }
}

/// Average-linkage agglomerative clustering over the gene distances of `pop`.
/// Among equally close pairs the one with the smallest `(lower id, higher id)`
/// node ids merges first.
pub fn build_tree(pop: &TaskPopulation) -> Result<LinkageTree> {
    let prox = ProximityMatrix::from_population(pop)?;
    let genes = prox.dim();
    if genes == 0 {
        return Err(Error::InvalidState("task dimension is 0".into()));
    }
    let total = 2 * genes - 1;
    let mut nodes: Vec<ClusterNode> = (0..genes)
        .map(|g| ClusterNode {
            members: vec![g],
            children: None,
            merge_distance: None,
        })
        .collect();

    let mut d = vec![0.0; total * total];
    for i in 0..genes {
        for j in 0..genes {
            d[i * total + j] = prox.get(i, j);
        }
    }
    let mut active: Vec<usize> = (0..genes).collect();
    while active.len() > 1 {
        let (mut best_a, mut best_b, mut best_d) = (0, 0, f64::INFINITY);
        for (ia, &a) in active.iter().enumerate() {
            for &b in &active[ia + 1..] {
                let dab = d[a * total + b];
                if dab < best_d {
                    (best_a, best_b, best_d) = (a, b, dab);
                }
            }
        }
        let id = nodes.len();
        let (sa, sb) = (
            nodes[best_a].members.len() as f64,
            nodes[best_b].members.len() as f64,
        );
        for &k in &active {
            if k != best_a && k != best_b {
                let dk = (sa * d[best_a * total + k] + sb * d[best_b * total + k]) / (sa + sb);
                d[id * total + k] = dk;
                d[k * total + id] = dk;
            }
        }
        let mut members = nodes[best_a].members.clone();
        members.extend_from_slice(&nodes[best_b].members);
        members.sort_unstable();
        nodes.push(ClusterNode {
            members,
            children: Some((best_a, best_b)),
            merge_distance: Some(best_d),
        });
        active.retain(|&k| k != best_a && k != best_b);
        active.push(id);
    }
    Ok(LinkageTree::from_nodes(pop.task_id, nodes))
}

/// Collects the decoded rows of every member whose skill factor is `task`,
/// falling back to the whole population when that group is empty.
pub fn task_population(pop: &Population, task: &TaskDefinition) -> Result<TaskPopulation> {
    let mut rows: Vec<Vec<Gene>> = pop
        .members
        .iter()
        .filter(|m| m.skill_factor == task.id)
        .map(|m| task.objective.decode(&m.genotype))
        .collect();
    if rows.is_empty() {
        rows = pop
            .members
            .iter()
            .map(|m| task.objective.decode(&m.genotype))
            .collect();
    }
    TaskPopulation::new(task.id, rows)
}

/// One linkage tree per task, built from that task's skill group.
pub fn build_all_trees(pop: &Population, tasks: &[TaskDefinition]) -> Result<Vec<LinkageTree>> {
    tasks
        .iter()
        .map(|t| build_tree(&task_population(pop, t)?))
        .collect()
}
