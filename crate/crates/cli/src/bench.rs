//! Comparison tables: every solver on every (instance, budget) pair, with the
//! ratio to the exact optimum when one can be computed.

use std::fmt::Write;
use std::path::Path;
use std::time::Instant;

use mrta_core::exact::solve_exact;
use mrta_core::instances::{gen_random, GeneratorConfig};
use mrta_core::{Budget, BudgetKind, Cost, Instance};
use rayon::prelude::*;

use crate::format::parse_instance;
use crate::solvers::{self, SolverOptions};
use crate::CliError;

pub const HEADER: &str = "id,n,m,qstar,kind,W,solver,count,optimal,micros,ratio";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchInput {
    pub id: String,
    pub instance: Instance,
    pub budget: Budget,
}

/// Seeded random family for benchmarking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCorpus {
    pub count: usize,
    pub seed: u64,
    pub robots: usize,
    pub tasks: usize,
    pub q_max: usize,
    pub cost_range: (Cost, Cost),
    pub symmetric: bool,
    pub uniform: bool,
    pub kinds: Vec<BudgetKind>,
    /// Budget as a percentage of the cost of doing everything at the highest price.
    pub budget_percent: u32,
}

impl GeneratedCorpus {
    pub fn inputs(&self) -> Result<Vec<BenchInput>, CliError> {
        let mut out = Vec::new();
        for k in 0..self.count {
            let cfg = GeneratorConfig {
                seed: self.seed.wrapping_add(k as u64),
                robots: self.robots,
                tasks: self.tasks,
                cost_range: self.cost_range,
                q_max: self.q_max,
                symmetric: self.symmetric,
                uniform: self.uniform,
                location: None,
            };
            let inst = gen_random(&cfg).map_err(CliError::from)?;
            for &kind in &self.kinds {
                let budget = Budget::new(kind, scaled_budget(&inst, kind, self.budget_percent));
                out.push(BenchInput { id: format!("g{k:05}"), instance: inst.clone(), budget });
            }
        }
        Ok(out)
    }
}

/// `percent` of the largest spend a budget of this kind could ever be asked to cover.
pub fn scaled_budget(inst: &Instance, kind: BudgetKind, percent: u32) -> Cost {
    let c = inst.max_cost();
    let full = match kind {
        BudgetKind::Total => c * inst.total_requirement() as Cost,
        BudgetKind::PerTask => c * inst.q_star() as Cost,
        BudgetKind::PerRobot => c,
    };
    full * percent as Cost / 100
}

/// Every `*.inst` file in `dir`, sorted by name; the id is the file stem.
pub fn corpus_inputs(dir: &Path) -> Result<Vec<BenchInput>, CliError> {
    let read = |e: std::io::Error| CliError::Usage(format!("{}: {e}", dir.display()));
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(read)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "inst"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            let (instance, budget) =
                parse_instance(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
            let id = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(BenchInput { id, instance, budget })
        })
        .collect()
}

fn ratio(exact: usize, count: usize) -> String {
    match (exact, count) {
        (0, 0) => "1.0000".into(),
        (_, 0) => "inf".into(),
        (e, c) => format!("{:.4}", e as f64 / c as f64),
    }
}

fn rows_for(input: &BenchInput, names: &[String], opts: &SolverOptions, timing: bool) -> String {
    let inst = &input.instance;
    let b = input.budget;
    let prefix = format!(
        "{},{},{},{},{},{}",
        input.id,
        inst.robot_count(),
        inst.task_count(),
        inst.q_star(),
        b.kind,
        b.value
    );
    let fits = solvers::exact_reference_fits(inst, b.kind);
    let exact = fits.then(|| solve_exact(inst, b).handled_count);
    let mut out = String::new();
    for name in names {
        let skip = solvers::is_exact(name) && !fits && !(name == "brute-force" && solvers::brute_force_fits(inst));
        let started = Instant::now();
        let result = if skip { None } else { solvers::run(name, inst, b, opts).ok() };
        let micros = if timing { started.elapsed().as_micros() } else { 0 };
        match result {
            None => {
                let _ = writeln!(out, "{prefix},{name},skipped,,,");
            }
            Some(r) => {
                let ratio = exact.map(|e| ratio(e, r.handled_count)).unwrap_or_default();
                let _ = writeln!(out, "{prefix},{name},{},{},{micros},{ratio}", r.handled_count, r.optimal);
            }
        }
    }
    out
}

/// The full table, header included. Rows follow input order then solver order.
pub fn bench_table(inputs: &[BenchInput], names: &[String], opts: &SolverOptions, timing: bool) -> Result<String, CliError> {
    if let Some(bad) = names.iter().find(|n| !solvers::is_known(n) || *n == "min-cost-all") {
        return Err(CliError::Usage(format!("solver `{bad}` cannot be benchmarked")));
    }
    let blocks: Vec<String> = inputs.par_iter().map(|input| rows_for(input, names, opts, timing)).collect();
    let mut out = String::with_capacity(blocks.iter().map(String::len).sum::<usize>() + HEADER.len() + 1);
    out.push_str(HEADER);
    out.push('\n');
    for b in blocks {
        out.push_str(&b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(count: usize) -> GeneratedCorpus {
        GeneratedCorpus {
            count,
            seed: 7,
            robots: 6,
            tasks: 4,
            q_max: 3,
            cost_range: (0, 9),
            symmetric: false,
            uniform: false,
            kinds: vec![BudgetKind::Total],
            budget_percent: 40,
        }
    }

    #[test]
    fn empty_corpus_is_header_only() {
        let t = bench_table(&[], &["greedy".into()], &SolverOptions::default(), true).unwrap();
        assert_eq!(t, format!("{HEADER}\n"));
    }

    #[test]
    fn greedy_ratio_bound_row_wise() {
        let inputs = corpus(100).inputs().unwrap();
        let names = vec!["exact-total".to_string(), "greedy-total".to_string()];
        let t = bench_table(&inputs, &names, &SolverOptions::default(), false).unwrap();
        let rows: Vec<Vec<&str>> = t.lines().skip(1).map(|l| l.split(',').collect()).collect();
        assert_eq!(rows.len(), 200);
        for r in rows {
            let q: f64 = r[3].parse().unwrap();
            let ratio: f64 = r[10].parse().unwrap();
            assert!(ratio >= 1.0 && ratio <= q + 1.0, "{r:?}");
            if r[6] == "exact-total" {
                assert_eq!(r[10], "1.0000");
            }
        }
    }

    #[test]
    fn untimed_tables_are_reproducible() {
        let inputs = corpus(20).inputs().unwrap();
        let names = vec!["exact".to_string(), "greedy".to_string(), "brute-force".to_string()];
        let a = bench_table(&inputs, &names, &SolverOptions::default(), false).unwrap();
        let b = bench_table(&inputs, &names, &SolverOptions::default(), false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oversized_exact_is_skipped() {
        let inst = Instance::symmetric(100, vec![100, 2, 2], vec![1, 60, 60]).unwrap();
        let input = BenchInput { id: "big".into(), instance: inst, budget: Budget::per_task(250) };
        let t = bench_table(&[input], &["exact-task".into(), "brute-force".into()], &SolverOptions::default(), false)
            .unwrap();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[1], "big,100,3,100,task,250,exact-task,skipped,,,");
        assert_eq!(lines[2], "big,100,3,100,task,250,brute-force,skipped,,,");
    }

    #[test]
    fn unknown_solver_is_rejected() {
        assert!(bench_table(&[], &["nope".into()], &SolverOptions::default(), false).is_err());
    }

    #[test]
    fn ratio_format() {
        assert_eq!(ratio(0, 0), "1.0000");
        assert_eq!(ratio(2, 0), "inf");
        assert_eq!(ratio(3, 2), "1.5000");
    }
}
