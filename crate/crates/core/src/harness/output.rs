use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{ExperimentConfig, SEED_POLICY};
use super::summary::{NormalizedTrace, SummaryRow, SummaryTable};
use crate::Result;

pub fn write_summary(path: &Path, table: &SummaryTable) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in &table.rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_summary(path: &Path) -> Result<SummaryTable> {
    let mut r = csv::Reader::from_path(path)?;
    let rows = r
        .deserialize::<SummaryRow>()
        .collect::<std::result::Result<_, _>>()?;
    Ok(SummaryTable { rows })
}

/// Writes `generation, evals, best_task1.., f1_norm.., f_norm_avg`.
pub fn write_trace(path: &Path, trace: &NormalizedTrace) -> Result<()> {
    let k = trace.rows.first().map_or(0, |r| r.best.len());
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["generation".to_string(), "evals".to_string()];
    header.extend((1..=k).map(|j| format!("best_task{j}")));
    header.extend((1..=k).map(|j| format!("f{j}_norm")));
    header.push("f_norm_avg".into());
    w.write_record(&header)?;
    for row in &trace.rows {
        let mut rec = vec![row.generation.to_string(), row.evaluations.to_string()];
        rec.extend(row.best.iter().map(f64::to_string));
        rec.extend(row.normalized.iter().map(f64::to_string));
        rec.push(row.average.to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ResolvedConfig<'a> {
    #[serde(flatten)]
    config: &'a ExperimentConfig,
    seed_policy: &'static str,
    run_seeds: Vec<u64>,
}

pub fn write_config(path: &Path, config: &ExperimentConfig) -> Result<()> {
    let resolved = ResolvedConfig {
        config,
        seed_policy: SEED_POLICY,
        run_seeds: (0..config.runs).map(|r| config.run_seed(r)).collect(),
    };
    fs::write(path, serde_json::to_string_pretty(&resolved)? + "\n")?;
    Ok(())
}

/// Writes `config.json`, `summary.csv` and one `trace_<run>.csv` per run
/// into `dir`, creating it if needed. Returns the written paths.
pub fn write_all(
    dir: &Path,
    config: &ExperimentConfig,
    table: &SummaryTable,
    traces: &[NormalizedTrace],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = vec![dir.join("config.json"), dir.join("summary.csv")];
    write_config(&written[0], config)?;
    write_summary(&written[1], table)?;
    for t in traces {
        let path = dir.join(format!("trace_{}.csv", t.run));
        write_trace(&path, t)?;
        written.push(path);
    }
    Ok(written)
}
