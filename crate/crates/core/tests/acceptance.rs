//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any of them fails.

use std::collections::VecDeque;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mfltga::harness::{
    mean, paired_wins, performance_improvement, run_mode_with, run_mt_with, run_st_with, summarize,
    ExperimentConfig, Mode, NormalizedTrace,
};
use mfltga::linkage::{build_tree, TaskPopulation};
use mfltga::mfo::{assign_ranks_and_skill, Evaluator, Individual, RunRecord};
use mfltga::oracle::exhaustive_cluspt;
use mfltga::oracle::exhaustive_dtf;
use mfltga::problems::cluspt::{
    decode, load_instance, validate, CluSpt, ClusteredGraph, TreeSolution,
};
use mfltga::problems::dtf::{DeceptiveTrap, TrapSpec};
use mfltga::variation::{tree_crossover, PunishmentState};
use mfltga::{Gene, Objective, TaskDefinition};

type Outcome = Result<String, String>;

fn dtf_tasks(k: usize, m: usize, copies: usize) -> Vec<TaskDefinition> {
    let spec = TrapSpec::new(k, m).unwrap();
    (0..copies)
        .map(|id| TaskDefinition::new(id, Arc::new(DeceptiveTrap::new(spec))))
        .collect()
}

fn config(pop_size: usize, max_evals: u64, runs: usize) -> ExperimentConfig {
    ExperimentConfig {
        pop_size,
        max_evals,
        runs,
        seed: 42,
        ..Default::default()
    }
}

fn all_solved(rec: &RunRecord) -> bool {
    rec.tasks.iter().all(|t| t.optimum_found)
}

fn per_task_evals(rec: &RunRecord) -> f64 {
    let evals: Vec<f64> = rec
        .tasks
        .iter()
        .map(|t| t.task_evals_to_success.unwrap_or(u64::MAX) as f64)
        .collect();
    mean(&evals).unwrap()
}

struct TrapRuns {
    st: Vec<RunRecord>,
    mt: Vec<RunRecord>,
}

fn trap_runs(k: usize, m: usize, pop: usize) -> TrapRuns {
    let cfg = config(pop, 1_000_000, 10);
    let st = run_st_with(&dtf_tasks(k, m, 1), &cfg).unwrap().remove(0);
    let mt = run_mt_with(&dtf_tasks(k, m, 2), &cfg).unwrap();
    TrapRuns { st, mt }
}

fn criterion_1(runs: &TrapRuns) -> Outcome {
    let st = runs.st.iter().filter(|r| all_solved(r)).count();
    let mt = runs.mt.iter().filter(|r| all_solved(r)).count();
    let msg = format!("dtf k=3 m=5: ST optimum {st}/10 (need 10), MT both tasks {mt}/10 (need 9)");
    if st == 10 && mt >= 9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_2(runs: &TrapRuns) -> Outcome {
    let st: Vec<f64> = runs.st.iter().map(per_task_evals).collect();
    let mt: Vec<f64> = runs.mt.iter().map(per_task_evals).collect();
    let (st_mean, mt_mean) = (mean(&st).unwrap(), mean(&mt).unwrap());
    let wins = paired_wins(&mt, &st);
    let pi = performance_improvement(mt_mean, st_mean).map_err(|e| e.to_string())?;
    let global_mt = mean(
        &runs
            .mt
            .iter()
            .map(|r| {
                r.tasks
                    .iter()
                    .filter_map(|t| t.evals_to_success)
                    .max()
                    .unwrap_or(u64::MAX) as f64
            })
            .collect::<Vec<_>>(),
    )
    .unwrap();
    let msg = format!(
        "dtf k=3 m=5 evals to success per task: MT {mt_mean:.1} vs ST {st_mean:.1}, P.Imp {pi:.1}%, \
         MT wins {wins}/10 (need 7); both tasks solved after {global_mt:.1} MT vs {:.1} serial ST evaluations",
        2.0 * st_mean
    );
    if mt_mean < st_mean && wins >= 7 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_3() -> Outcome {
    let runs = trap_runs(5, 10, 256);
    let st = runs.st.iter().filter(|r| all_solved(r)).count();
    let mt = runs.mt.iter().filter(|r| all_solved(r)).count();
    let msg =
        format!("dtf k=5 m=10 pop 256: ST optimum {st}/10, MT both tasks {mt}/10 (need 9 each)");
    if st >= 9 && mt >= 9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// `(k, m, LTGA evals, MF-LTGA evals, P.Imp %)` as printed in the results table.
const TABLE_2: [(usize, usize, f64, f64, f64); 18] = [
    (3, 5, 4228.0, 2783.2, 34.2),
    (3, 10, 13664.8, 8908.8, 34.8),
    (3, 15, 24552.0, 13780.8, 43.9),
    (3, 20, 34007.6, 23434.8, 31.1),
    (3, 25, 52244.0, 28179.2, 46.1),
    (3, 30, 57387.2, 39765.2, 30.7),
    (4, 5, 7706.4, 6642.4, 13.8),
    (4, 10, 25615.2, 23587.2, 7.9),
    (4, 15, 39010.8, 38043.2, 2.5),
    (4, 20, 64053.2, 61209.2, 4.4),
    (4, 25, 85021.2, 66013.2, 22.4),
    (4, 30, 111479.2, 95200.0, 14.6),
    (5, 5, 20342.4, 13900.8, 31.7),
    (5, 10, 66150.0, 49568.4, 25.1),
    (5, 15, 123994.4, 65327.2, 47.3),
    (5, 20, 176378.4, 145569.6, 17.5),
    (5, 25, 231582.4, 128116.8, 44.7),
    (5, 30, 284411.2, 196322.4, 31.0),
];

fn criterion_4() -> Outcome {
    let mut off = Vec::new();
    for (k, m, ltga, mf, printed) in TABLE_2 {
        let pi = performance_improvement(mf, ltga).map_err(|e| e.to_string())?;
        if (pi - printed).abs() > 0.1 {
            off.push(format!("k={k} m={m}: {pi:.3} vs {printed}"));
        }
    }
    if off.is_empty() {
        Ok("all 18 P.Imp values reproduced within 0.1".into())
    } else {
        Err(format!("mismatched rows: {}", off.join("; ")))
    }
}

/// Trap value written directly from the block definition, over a bool slice.
fn reference_trap_cost(bits: &[bool], k: usize) -> f64 {
    let m = bits.len() / k;
    let value: usize = bits
        .chunks(k)
        .map(|b| {
            let u = b.iter().filter(|&&x| x).count();
            if u == k {
                k
            } else {
                k - u - 1
            }
        })
        .sum();
    (m * k - value) as f64
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for k in 1..=20 {
        for m in (1..=20 / k).rev() {
            let spec = TrapSpec::new(k, m).unwrap();
            let r = exhaustive_dtf(spec).map_err(|e| e.to_string())?;
            let ones = vec![1; spec.length()];
            if r.optimum_count != 1 || r.optimum_cost != 0.0 || spec.evaluate(&ones).unwrap() != 0.0
            {
                return Err(format!(
                    "k={k} m={m}: optimum {r:?} is not the unique all-ones string"
                ));
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..10_000 {
        let (k, m) = (rng.gen_range(1..=7), rng.gen_range(1..=12));
        let objective = DeceptiveTrap::new(TrapSpec::new(k, m).unwrap());
        let bits: Vec<bool> = (0..k * m).map(|_| rng.gen()).collect();
        let genes: Vec<Gene> = bits.iter().map(|&b| b as Gene).collect();
        let (got, want) = (objective.evaluate(&genes), reference_trap_cost(&bits, k));
        if got != want {
            return Err(format!(
                "string {i} (k={k} m={m}): engine {got} vs reference {want}"
            ));
        }
    }
    Ok(format!(
        "unique all-ones optimum on {checked} (k, m) pairs with l <= 20; 10000 random strings agree exactly"
    ))
}

fn fixtures() -> Vec<(String, ClusteredGraph)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    ["six_three", "detour_seven", "euc_eight"]
        .into_iter()
        .map(|name| {
            (
                name.to_string(),
                load_instance(dir.join(format!("{name}.txt"))).unwrap(),
            )
        })
        .collect()
}

/// Source distances by breadth-first search over the child lists implied by
/// the parent array, independent of the validator's ancestor walk.
fn traversal_objective(g: &ClusteredGraph, sol: &TreeSolution) -> Option<f64> {
    let n = g.vertex_count();
    let mut children = vec![Vec::new(); n];
    for (p, v) in sol.edges() {
        children[p].push(v);
    }
    let mut dist = vec![None; n];
    dist[g.source()] = Some(0.0);
    let mut queue = VecDeque::from([g.source()]);
    while let Some(u) = queue.pop_front() {
        for &v in &children[u] {
            dist[v] = Some(dist[u]? + g.weight(u, v)?);
            queue.push_back(v);
        }
    }
    dist.into_iter().sum()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut total = 0;
    for (name, g) in fixtures() {
        let n = g.vertex_count();
        for i in 0..1000 {
            let genes: Vec<Gene> = if i % 2 == 0 {
                (0..n).map(|_| rng.gen_range(0..n as Gene)).collect()
            } else {
                (0..n).map(|_| rng.gen()).collect()
            };
            let sol = decode(&g, &genes).map_err(|e| e.to_string())?;
            let violations = validate(&g, &sol);
            if !violations.is_empty() {
                return Err(format!("{name} genotype {genes:?}: {violations:?}"));
            }
            if traversal_objective(&g, &sol) != Some(sol.objective) {
                return Err(format!(
                    "{name} genotype {genes:?}: objective differs from traversal"
                ));
            }
            total += 1;
        }
    }
    Ok(format!(
        "{total} decoded trees valid with matching objectives"
    ))
}

fn criterion_7() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, g) in fixtures() {
        let optimum = exhaustive_cluspt(&g)
            .map_err(|e| e.to_string())?
            .optimum_cost;
        let g = Arc::new(g);
        let tasks: Vec<TaskDefinition> = (0..2)
            .map(|id| {
                TaskDefinition::new(id, Arc::new(CluSpt::new(g.clone())))
                    .with_known_optimum(Some(optimum))
            })
            .collect();
        let runs = run_mt_with(&tasks, &config(50, 100_000, 10)).map_err(|e| e.to_string())?;
        let hits = runs
            .iter()
            .filter(|r| r.tasks[0].best_found == optimum && r.evaluations <= 100_000)
            .count();
        ok &= hits >= 9;
        lines.push(format!("{name} {hits}/10 at {optimum}"));
    }
    let msg = format!(
        "MF-LTGA reaches the exhaustive optimum: {} (need 9 each)",
        lines.join(", ")
    );
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

struct Counted {
    inner: DeceptiveTrap,
    calls: Arc<AtomicU64>,
}

impl Objective for Counted {
    fn name(&self) -> String {
        self.inner.name()
    }
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }
    fn alphabet_size(&self) -> usize {
        2
    }
    fn evaluate(&self, genes: &[Gene]) -> f64 {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(genes)
    }
    fn known_optimum(&self) -> Option<f64> {
        Some(0.0)
    }
}

fn check_trees(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..50 {
        let (genes, rows) = (rng.gen_range(1..12), rng.gen_range(1..30));
        let pop: Vec<Vec<Gene>> = (0..rows)
            .map(|_| (0..genes).map(|_| rng.gen_range(0..3)).collect())
            .collect();
        let tree = build_tree(&TaskPopulation::new(0, pop).unwrap()).map_err(|e| e.to_string())?;
        if tree.nodes.len() != 2 * genes - 1 {
            return Err(format!("{genes} genes gave {} nodes", tree.nodes.len()));
        }
        for node in &tree.nodes {
            if let Some((a, b)) = node.children {
                let mut union = tree.nodes[a].members.clone();
                union.extend(&tree.nodes[b].members);
                union.sort_unstable();
                if union != node.members {
                    return Err(format!(
                        "node {:?} is not the union of its children",
                        node.members
                    ));
                }
            }
        }
        if tree.root().members != (0..genes).collect::<Vec<_>>() {
            return Err("root does not hold every gene".into());
        }
    }
    Ok(())
}

fn check_swaps(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let tasks = dtf_tasks(3, 4, 1);
    for _ in 0..50 {
        let mut evaluator = Evaluator::new(&tasks);
        let mut parents: Vec<Individual> =
            (0..2).map(|_| Individual::random(rng, 12, 2, 1)).collect();
        for p in &mut parents {
            evaluator.evaluate_individual(p, 0);
        }
        let pop: Vec<Vec<Gene>> = (0..20)
            .map(|_| (0..12).map(|_| rng.gen_range(0..2)).collect())
            .collect();
        let tree = build_tree(&TaskPopulation::new(0, pop).unwrap()).unwrap();
        let mut state = PunishmentState {
            count: 0,
            max_p: u32::MAX,
        };
        let before: Vec<[Gene; 2]> = (0..12)
            .map(|g| sorted([parents[0].genotype[g], parents[1].genotype[g]]))
            .collect();
        let (a, b, report) = tree_crossover(
            parents[0].clone(),
            parents[1].clone(),
            &tree,
            0,
            &mut state,
            rng,
            &mut evaluator,
        );
        if report.restarted {
            continue;
        }
        let after: Vec<[Gene; 2]> = (0..12)
            .map(|g| sorted([a.genotype[g], b.genotype[g]]))
            .collect();
        if before != after {
            return Err("crossover changed the per-position gene multiset".into());
        }
        if report.evaluations > 2 * report.masks_visited as u64 {
            return Err("more than two evaluations per visited mask".into());
        }
    }
    Ok(())
}

fn sorted(mut pair: [Gene; 2]) -> [Gene; 2] {
    pair.sort_unstable();
    pair
}

fn check_counter() -> Result<(), String> {
    let calls = Arc::new(AtomicU64::new(0));
    let spec = TrapSpec::new(3, 6).unwrap();
    let tasks: Vec<TaskDefinition> = (0..2)
        .map(|id| {
            TaskDefinition::new(
                id,
                Arc::new(Counted {
                    inner: DeceptiveTrap::new(spec),
                    calls: calls.clone(),
                }),
            )
        })
        .collect();
    let runs = run_mt_with(&tasks, &config(32, 20_000, 3)).map_err(|e| e.to_string())?;
    let reported: u64 = runs.iter().map(|r| r.evaluations).sum();
    let per_task: u64 = runs
        .iter()
        .flat_map(|r| &r.tasks)
        .map(|t| t.task_evaluations)
        .sum();
    let actual = calls.load(Ordering::Relaxed);
    if reported != actual || per_task != actual {
        return Err(format!(
            "counter {reported} / per task {per_task} vs {actual} objective calls"
        ));
    }
    Ok(())
}

fn check_ranks(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..50 {
        let (n, k) = (rng.gen_range(1..20), rng.gen_range(1..4));
        let mut members: Vec<Individual> = (0..n)
            .map(|_| {
                let mut ind = Individual::new(vec![0], k);
                for t in 0..k {
                    ind.factorial_costs[t] = Some(rng.gen_range(0..5) as f64);
                }
                ind
            })
            .collect();
        assign_ranks_and_skill(&mut members, k).map_err(|e| e.to_string())?;
        for t in 0..k {
            let mut ranks: Vec<usize> = members
                .iter()
                .map(|m| m.factorial_ranks[t].unwrap())
                .collect();
            ranks.sort_unstable();
            if ranks != (1..=n).collect::<Vec<_>>() {
                return Err(format!("task {t} ranks are not a permutation of 1..={n}"));
            }
        }
        for m in &members {
            let best = m.factorial_ranks.iter().map(|r| r.unwrap()).min().unwrap();
            let tau = m
                .factorial_ranks
                .iter()
                .position(|r| r.unwrap() == best)
                .unwrap();
            if m.scalar_fitness != 1.0 / best as f64 || m.skill_factor != tau {
                return Err("scalar fitness or skill factor disagrees with the ranks".into());
            }
        }
    }
    Ok(())
}

fn check_degeneration() -> Result<(), String> {
    let tasks = dtf_tasks(4, 4, 1);
    let cfg = config(64, 30_000, 3);
    let mt = run_mt_with(&tasks, &cfg).map_err(|e| e.to_string())?;
    let st = run_st_with(&tasks, &cfg).map_err(|e| e.to_string())?;
    for (a, b) in mt.iter().zip(&st[0]) {
        let a = serde_json::to_string(&a.without_timing()).unwrap();
        let b = serde_json::to_string(&b.without_timing()).unwrap();
        if a != b {
            return Err("MT with one task differs from ST".into());
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let checks: [(&str, Result<(), String>); 5] = [
        ("linkage tree structure", check_trees(&mut rng)),
        ("mask swap multiset", check_swaps(&mut rng)),
        ("evaluation counter", check_counter()),
        ("rank and scalar fitness", check_ranks(&mut rng)),
        ("single-task degeneration", check_degeneration()),
    ];
    let failed: Vec<String> = checks
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    if failed.is_empty() {
        Ok(checks.map(|(name, _)| name).join(", ") + " hold")
    } else {
        Err(failed.join("; "))
    }
}

fn criterion_9() -> Outcome {
    let tasks = dtf_tasks(5, 15, 2);
    let mt_cfg = ExperimentConfig {
        mode: Mode::Mt,
        ..config(256, 1_000_000, 10)
    };
    let st_cfg = ExperimentConfig {
        mode: Mode::St,
        ..mt_cfg.clone()
    };
    let mt = run_mode_with(&tasks, &mt_cfg).map_err(|e| e.to_string())?;
    let st = run_mode_with(&tasks, &st_cfg).map_err(|e| e.to_string())?;
    let summary = summarize(&[(Mode::Mt, mt), (Mode::St, st)]).map_err(|e| e.to_string())?;
    let (mt, st) = summary.traces.split_at(10);
    let mut wins = 0;
    let mut by_evals = 0;
    let mut pairs = Vec::new();
    for (a, b) in mt.iter().zip(st) {
        let g = a.final_generation().min(b.final_generation());
        let (fa, fb) = (a.average_at(g).unwrap(), b.average_at(g).unwrap());
        if fa <= fb {
            wins += 1;
        }
        pairs.push(format!("{fa:.3}/{fb:.3}@{g}"));
        let e = a
            .rows
            .last()
            .unwrap()
            .evaluations
            .min(b.rows.last().unwrap().evaluations);
        let at = |t: &NormalizedTrace| {
            t.rows
                .iter()
                .take_while(|r| r.evaluations <= e)
                .last()
                .unwrap()
                .average
        };
        if at(a) <= at(b) {
            by_evals += 1;
        }
    }
    let msg = format!(
        "dtf k=5 m=15: MT <= ST averaged normalized objective at the final common generation in \
         {wins}/10 (need 7) [MT/ST: {}]; at the final common evaluation count MT <= ST in {by_evals}/10",
        pairs.join(" ")
    );
    if wins >= 7 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn main() -> ExitCode {
    let small = trap_runs(3, 5, 128);
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion_1(&small))),
        (2, Box::new(|| criterion_2(&small))),
        (3, Box::new(criterion_3)),
        (4, Box::new(criterion_4)),
        (5, Box::new(criterion_5)),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
    ];
    let mut failures = 0;
    for (id, check) in criteria {
        match check() {
            Ok(msg) => println!("criterion {id}: PASS - {msg}"),
            Err(msg) => {
                failures += 1;
                println!("criterion {id}: FAIL - {msg}");
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
