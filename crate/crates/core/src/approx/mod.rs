//! Approximation algorithms.

mod greedy;
mod lp;
mod packing;
mod ptas;

pub use greedy::{greedy_robot, greedy_task, greedy_total};
pub use lp::{lp_relax_2constraint, FractionalSolution};
pub use packing::{
    packing_family, set_packing_local_search, set_packing_local_search_with_cap, CandidateSet, PackingFamily,
    DEFAULT_PACKING_CAP, DEFAULT_SWAP_DEPTH,
};
pub use ptas::{ptas_symmetric_total, Epsilon, MAX_EPSILON_DENOMINATOR};

use crate::model::{Budget, BudgetKind, Instance, SolveReport};

/// Greedy variant matching the budget kind.
pub fn greedy(inst: &Instance, budget: Budget) -> SolveReport {
    match budget.kind {
        BudgetKind::Total => greedy_total(inst, budget.value),
        BudgetKind::PerTask => greedy_task(inst, budget.value),
        BudgetKind::PerRobot => greedy_robot(inst, budget.value),
    }
}
