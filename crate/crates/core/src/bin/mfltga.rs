use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mfltga::harness::{run_experiment, ExperimentConfig, Mode, ProblemSpec};
use mfltga::oracle::{exhaustive_cluspt, exhaustive_dtf};
use mfltga::problems::cluspt::load_instance;
use mfltga::{Error, Result};

#[derive(Parser)]
#[command(
    name = "mfltga",
    version,
    about = "Multifactorial linkage tree GA experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded ST or MT experiments and write summary, traces and config.
    Run(RunArgs),
    /// Solve a small instance exhaustively and print the result as JSON.
    Oracle {
        #[arg(long)]
        problem: ProblemSpec,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// Problem instance; repeat for several tasks.
    #[arg(long, required = true)]
    problem: Vec<ProblemSpec>,
    #[arg(long, default_value = "mt")]
    mode: Mode,
    /// Task count. With a single --problem, that instance is repeated.
    #[arg(long)]
    tasks: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pop: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_evals: u64,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    max_p: u32,
    #[arg(long, default_value_t = 0.05)]
    mutation: f64,
    #[arg(long, default_value_t = 0.5)]
    rmp: f64,
    #[arg(long, default_value_t = 1)]
    trace_every: usize,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

impl RunArgs {
    fn into_config(self) -> Result<ExperimentConfig> {
        let tasks = match (self.problem.len(), self.tasks) {
            (1, Some(n)) => vec![self.problem[0].clone(); n],
            (given, Some(n)) if given != n => {
                return Err(Error::Config(format!(
                    "--tasks {n} does not match the {given} --problem values"
                )))
            }
            _ => self.problem,
        };
        let cfg = ExperimentConfig {
            tasks,
            mode: self.mode,
            pop_size: self.pop,
            max_evals: self.max_evals,
            runs: self.runs,
            seed: self.seed,
            max_p: self.max_p,
            mutation_rate: self.mutation,
            rmp: self.rmp,
            trace_every: self.trace_every,
            out_path: Some(self.out),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Run(args) => {
            let cfg = args.into_config()?;
            let exp = run_experiment(&cfg)?;
            for row in &exp.summary.table.rows {
                let evals = row
                    .mean_num_evals
                    .map_or_else(|| "-".to_string(), |e| format!("{e:.1}"));
                writeln!(
                    out,
                    "{} {} task{}: opt {}/{} evals {} bf {} avg {}",
                    row.instance, row.mode, row.task, row.num_opt, row.runs, evals, row.bf, row.avg
                )?;
            }
            if let Some(dir) = &cfg.out_path {
                writeln!(out, "results written to {}", dir.display())?;
            }
        }
        Command::Oracle { problem } => {
            let result = match &problem {
                ProblemSpec::Dtf(spec) => exhaustive_dtf(*spec)?,
                ProblemSpec::CluSpt(path) => exhaustive_cluspt(&load_instance(path)?)?,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
