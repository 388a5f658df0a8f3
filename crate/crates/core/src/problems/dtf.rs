//! Concatenated deceptive trap functions over `m` blocks of `k` bits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::task::{Gene, Objective};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrapSpec {
    k: usize,
    m: usize,
}

impl TrapSpec {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::Config(format!(
                "trap needs k >= 1 and m >= 1, got k={k} m={m}"
            )));
        }
        Ok(Self { k, m })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Total bit length `m * k`.
    pub fn length(&self) -> usize {
        self.k * self.m
    }

    pub fn max_value(&self) -> usize {
        self.length()
    }

    /// Sum of block scores (to be maximized).
    pub fn value(&self, x: &[Gene]) -> Result<usize> {
        if x.len() != self.length() {
            return Err(Error::LengthMismatch {
                expected: self.length(),
                found: x.len(),
            });
        }
        check_binary(x)?;
        Ok(self.value_unchecked(x))
    }

    /// Minimization cost `m * k - value`; the all-ones string costs 0.
    pub fn evaluate(&self, x: &[Gene]) -> Result<f64> {
        Ok((self.max_value() - self.value(x)?) as f64)
    }

    fn value_unchecked(&self, x: &[Gene]) -> usize {
        x[..self.length()]
            .chunks_exact(self.k)
            .map(|block| trap_score(self.k, block.iter().filter(|&&g| g % 2 == 1).count()))
            .sum()
    }
}

impl fmt::Display for TrapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dtf_k{}_m{}", self.k, self.m)
    }
}

fn check_binary(x: &[Gene]) -> Result<()> {
    match x.iter().position(|&g| g > 1) {
        Some(i) => Err(Error::Config(format!("gene {i} = {} is not binary", x[i]))),
        None => Ok(()),
    }
}

fn trap_score(k: usize, ones: usize) -> usize {
    if ones == k {
        k
    } else {
        k - 1 - ones
    }
}

/// Score of one trap block: `k` when all bits are set, `k - 1 - u` otherwise.
pub fn trap_block(bits: &[Gene], k: usize) -> Result<usize> {
    if bits.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            found: bits.len(),
        });
    }
    check_binary(bits)?;
    Ok(trap_score(k, bits.iter().filter(|&&g| g == 1).count()))
}

/// The benchmark grid: `k` in {3, 4, 5}, `m` in {5, 10, ..., 30}, with
/// population 128 for `k` = 3, 4 and 256 for `k` = 5.
pub fn instance_grid() -> Vec<(TrapSpec, usize)> {
    let mut grid = Vec::with_capacity(18);
    for (k, pop) in [(3, 128), (4, 128), (5, 256)] {
        for m in (5..=30).step_by(5) {
            grid.push((TrapSpec { k, m }, pop));
        }
    }
    grid
}

/// Engine adapter. Genes are read modulo 2 so the trap can share a unified
/// space with tasks over a larger alphabet.
#[derive(Clone, Debug)]
pub struct DeceptiveTrap {
    spec: TrapSpec,
}

impl DeceptiveTrap {
    pub fn new(spec: TrapSpec) -> Self {
        Self { spec }
    }

    pub fn spec(&self) -> TrapSpec {
        self.spec
    }
}

impl Objective for DeceptiveTrap {
    fn name(&self) -> String {
        self.spec.to_string()
    }

    fn dimension(&self) -> usize {
        self.spec.length()
    }

    fn alphabet_size(&self) -> usize {
        2
    }

    fn evaluate(&self, genes: &[Gene]) -> f64 {
        (self.spec.max_value() - self.spec.value_unchecked(genes)) as f64
    }

    fn decode(&self, genes: &[Gene]) -> Vec<Gene> {
        genes[..self.spec.length()].iter().map(|g| g % 2).collect()
    }

    fn known_optimum(&self) -> Option<f64> {
        Some(0.0)
    }
}
