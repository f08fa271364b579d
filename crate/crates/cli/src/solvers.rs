//! Named solvers as exposed on the command line.

use mrta_core::approx::{self, Epsilon, DEFAULT_PACKING_CAP, DEFAULT_SWAP_DEPTH};
use mrta_core::exact::{self, EnumerationCap};
use mrta_core::polycases;
use mrta_core::{Budget, BudgetKind, Error, Instance, SearchStats, SolveReport};

pub const SOLVER_NAMES: &[&str] = &[
    "brute-force",
    "exact",
    "exact-total",
    "exact-task",
    "exact-robot",
    "min-cost-all",
    "symmetric-uniform",
    "symmetric-task",
    "symmetric-robot",
    "q2",
    "greedy",
    "greedy-total",
    "greedy-task",
    "greedy-robot",
    "set-packing",
    "ptas",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub eps: Epsilon,
    pub depth: usize,
    /// Lifts the cap on `q*` for set packing.
    pub force: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { eps: Epsilon::new(1, 4).expect("valid epsilon"), depth: DEFAULT_SWAP_DEPTH, force: false }
    }
}

pub fn is_known(name: &str) -> bool {
    SOLVER_NAMES.contains(&name)
}

/// Whether the solver proves optimality of its answer.
pub fn is_exact(name: &str) -> bool {
    matches!(
        name,
        "brute-force"
            | "exact"
            | "exact-total"
            | "exact-task"
            | "exact-robot"
            | "symmetric-uniform"
            | "symmetric-task"
            | "symmetric-robot"
            | "q2"
    )
}

fn need_kind(name: &str, budget: Budget, kinds: &[BudgetKind]) -> Result<(), Error> {
    if kinds.contains(&budget.kind) {
        Ok(())
    } else {
        let names: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
        Err(Error::PreconditionViolated(format!(
            "{name} needs a {} budget, got {}",
            names.join(" or "),
            budget.kind
        )))
    }
}

/// Runs solver `name`. Unknown names give `InvalidInput`.
pub fn run(name: &str, inst: &Instance, budget: Budget, opts: &SolverOptions) -> Result<SolveReport, Error> {
    use BudgetKind::*;
    let w = budget.value;
    match name {
        "brute-force" => exact::brute_force(inst, budget),
        "exact" => Ok(exact::solve_exact(inst, budget)),
        "exact-total" => need_kind(name, budget, &[Total]).map(|_| exact::exact_total_budget(inst, w)),
        "exact-task" => need_kind(name, budget, &[PerTask]).map(|_| exact::exact_task_budget(inst, w)),
        "exact-robot" => need_kind(name, budget, &[PerRobot]).map(|_| exact::exact_robot_budget(inst, w)),
        "min-cost-all" => {
            let (_, a) = polycases::min_cost_handle_all(inst)
                .map_err(|e| Error::PreconditionViolated(format!("cannot handle every task: {e}")))?;
            Ok(SolveReport::from_assignment(inst, a, "min-cost-all", true, SearchStats::default()))
        }
        "symmetric-uniform" => {
            need_kind(name, budget, &[Total])?;
            polycases::solve_symmetric_uniform_total(inst, w)
        }
        "symmetric-task" => {
            need_kind(name, budget, &[PerTask])?;
            polycases::solve_symmetric_task(inst, w)
        }
        "symmetric-robot" => {
            need_kind(name, budget, &[PerRobot])?;
            polycases::solve_symmetric_robot(inst, w)
        }
        "q2" => {
            need_kind(name, budget, &[Total, PerRobot])?;
            polycases::solve_q2(inst, budget.kind, w)
        }
        "greedy" => Ok(approx::greedy(inst, budget)),
        "greedy-total" => need_kind(name, budget, &[Total]).map(|_| approx::greedy_total(inst, w)),
        "greedy-task" => need_kind(name, budget, &[PerTask]).map(|_| approx::greedy_task(inst, w)),
        "greedy-robot" => need_kind(name, budget, &[PerRobot]).map(|_| approx::greedy_robot(inst, w)),
        "set-packing" => {
            need_kind(name, budget, &[PerTask, PerRobot])?;
            let cap = if opts.force { usize::MAX } else { DEFAULT_PACKING_CAP };
            approx::set_packing_local_search_with_cap(inst, budget.kind, w, opts.depth, cap)
        }
        "ptas" => {
            need_kind(name, budget, &[Total])?;
            approx::ptas_symmetric_total(inst, w, opts.eps)
        }
        other => Err(Error::InvalidInput(format!("unknown solver `{other}`"))),
    }
}

/// Whether the exact solver for `kind` is cheap enough to serve as a reference.
pub fn exact_reference_fits(inst: &Instance, kind: BudgetKind) -> bool {
    match kind {
        BudgetKind::PerTask => inst.task_count() <= 8 && inst.robot_count() <= 12,
        _ => inst.task_count() <= 12 && inst.robot_count() <= 200,
    }
}

pub fn brute_force_fits(inst: &Instance) -> bool {
    EnumerationCap::default().admits(inst)
}
