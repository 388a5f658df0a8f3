use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::mfo::EngineConfig;
use crate::problems::cluspt::{load_instance, CluSpt};
use crate::problems::dtf::{DeceptiveTrap, TrapSpec};
use crate::task::{Objective, TaskDefinition};
use crate::{Error, Result};

/// One benchmark instance, written as `dtf:k=3,m=5` or `cluspt:<path>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ProblemSpec {
    Dtf(TrapSpec),
    CluSpt(PathBuf),
}

impl ProblemSpec {
    pub fn load(&self) -> Result<Arc<dyn Objective>> {
        Ok(match self {
            ProblemSpec::Dtf(spec) => Arc::new(DeceptiveTrap::new(*spec)),
            ProblemSpec::CluSpt(path) => Arc::new(CluSpt::new(Arc::new(load_instance(path)?))),
        })
    }
}

impl FromStr for ProblemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("problem '{s}' needs a 'kind:' prefix")))?;
        match kind {
            "dtf" => {
                let (mut k, mut m) = (None, None);
                for part in rest.split(',') {
                    let (key, value) = part.split_once('=').ok_or_else(|| {
                        Error::Config(format!("expected key=value in '{s}', got '{part}'"))
                    })?;
                    let value: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| Error::Config(format!("bad number '{value}' in '{s}'")))?;
                    match key.trim() {
                        "k" => k = Some(value),
                        "m" => m = Some(value),
                        other => return Err(Error::Config(format!("unknown dtf key '{other}'"))),
                    }
                }
                match (k, m) {
                    (Some(k), Some(m)) => Ok(ProblemSpec::Dtf(TrapSpec::new(k, m)?)),
                    _ => Err(Error::Config(format!("'{s}' needs both k and m"))),
                }
            }
            "cluspt" if !rest.is_empty() => Ok(ProblemSpec::CluSpt(PathBuf::from(rest))),
            "cluspt" => Err(Error::Config("cluspt needs an instance path".into())),
            other => Err(Error::Config(format!("unknown problem kind '{other}'"))),
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::Dtf(spec) => write!(f, "dtf:k={},m={}", spec.k(), spec.m()),
            ProblemSpec::CluSpt(path) => write!(f, "cluspt:{}", path.display()),
        }
    }
}

impl From<ProblemSpec> for String {
    fn from(p: ProblemSpec) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for ProblemSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Each task solved on its own by single-task LTGA.
    St,
    /// All tasks solved together by MF-LTGA.
    Mt,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "st" => Ok(Mode::St),
            "mt" => Ok(Mode::Mt),
            other => Err(Error::Config(format!(
                "mode must be 'st' or 'mt', got '{other}'"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::St => "st",
            Mode::Mt => "mt",
        })
    }
}

pub const SEED_POLICY: &str = "run r uses seed = base_seed XOR r, r = 0..runs";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub tasks: Vec<ProblemSpec>,
    pub mode: Mode,
    pub pop_size: usize,
    pub max_evals: u64,
    pub runs: usize,
    pub seed: u64,
    pub max_p: u32,
    pub mutation_rate: f64,
    /// Accepted for compatibility; mating never consults it.
    pub rmp: f64,
    pub trace_every: usize,
    pub out_path: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            tasks: Vec::new(),
            mode: Mode::Mt,
            pop_size: 100,
            max_evals: 1_000_000,
            runs: 10,
            seed: 42,
            max_p: 10,
            mutation_rate: 0.05,
            rmp: 0.5,
            trace_every: 1,
            out_path: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tasks.is_empty() {
            return Err(Error::Config("at least one task is required".into()));
        }
        self.validate_run_params()
    }

    /// Checks everything except the problem list, for callers that supply
    /// their own tasks.
    pub fn validate_run_params(&self) -> Result<()> {
        if self.pop_size < 2 || !self.pop_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "population size must be even and >= 2, got {}",
                self.pop_size
            )));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be >= 1".into()));
        }
        if self.trace_every == 0 {
            return Err(Error::Config("trace_every must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::Config(format!(
                "mutation rate {} outside [0, 1]",
                self.mutation_rate
            )));
        }
        if !(0.0..=1.0).contains(&self.rmp) {
            return Err(Error::Config(format!("rmp {} outside [0, 1]", self.rmp)));
        }
        Ok(())
    }

    /// Loads every task; ids follow list order.
    pub fn build_tasks(&self) -> Result<Vec<TaskDefinition>> {
        self.tasks
            .iter()
            .enumerate()
            .map(|(id, p)| Ok(TaskDefinition::new(id, p.load()?)))
            .collect()
    }

    pub fn run_seed(&self, run: usize) -> u64 {
        self.seed ^ run as u64
    }

    pub fn engine_config(&self, run: usize) -> EngineConfig {
        EngineConfig {
            pop_size: self.pop_size,
            max_evals: self.max_evals,
            max_p: self.max_p,
            mutation_rate: self.mutation_rate,
            rmp: self.rmp,
            trace_every: self.trace_every,
            seed: self.run_seed(run),
        }
    }
}
