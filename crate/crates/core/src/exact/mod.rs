//! Ground-truth solvers for the three budget kinds and the LP exporter.

mod brute;
mod lp;
mod subsets;
mod task_bnb;

pub use brute::{brute_force, brute_force_with_cap, EnumerationCap};
pub use lp::export_lp;
pub use subsets::{exact_robot_budget, exact_total_budget, min_cost_for_subset};
pub use task_bnb::exact_task_budget;

pub(crate) use subsets::Combinations;

pub use crate::model::SearchStats;

use crate::model::{Budget, BudgetKind, Instance, SolveReport};

/// Exact solver matching the budget kind.
pub fn solve_exact(inst: &Instance, budget: Budget) -> SolveReport {
    match budget.kind {
        BudgetKind::Total => exact_total_budget(inst, budget.value),
        BudgetKind::PerTask => exact_task_budget(inst, budget.value),
        BudgetKind::PerRobot => exact_robot_budget(inst, budget.value),
    }
}
