//! Command-line front end for `mrta-core`: instance files, solving,
//! generators, benchmarking and verification.

pub mod bench;
pub mod format;
pub mod solvers;
pub mod verify;

use std::fmt::Write;

use mrta_core::{evaluate, Budget, Instance, SolveReport};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Carries the full failure report.
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Verification(_) => EXIT_VERIFY,
        }
    }
}

impl From<mrta_core::Error> for CliError {
    fn from(e: mrta_core::Error) -> Self {
        use mrta_core::Error::*;
        match e {
            PreconditionViolated(m) => CliError::Precondition(m),
            CapExceeded(m) => CliError::Precondition(format!("size cap exceeded: {m}")),
            Infeasible(m) => CliError::Precondition(format!("infeasible: {m}")),
            InvalidInput(m) | DimensionMismatch(m) => CliError::Usage(m),
        }
    }
}

/// Only the environment override, if set and numeric, replaces `seed`.
pub fn effective_seed(seed: u64) -> Result<u64, CliError> {
    match std::env::var("MRTA_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("MRTA_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(seed),
    }
}

/// Human-readable solve report.
pub fn render_report(inst: &Instance, budget: Budget, r: &SolveReport) -> String {
    let e = evaluate(inst, &r.assignment).expect("solver witness matches the instance");
    let mut out = String::new();
    let _ = writeln!(out, "solver: {}", r.solver);
    let _ = writeln!(out, "budget: {} {}", budget.kind, budget.value);
    let _ = writeln!(out, "handled: {} of {}", r.handled_count, inst.task_count());
    let _ = writeln!(out, "optimal: {}", r.optimal);
    let _ = writeln!(out, "total cost: {}", e.total_cost);
    let handled: Vec<String> = (0..inst.task_count())
        .filter(|&j| e.handled[j])
        .map(|j| format!("t{}={}", j + 1, e.per_task_cost[j]))
        .collect();
    let _ = writeln!(out, "task costs: {}", if handled.is_empty() { "-".into() } else { handled.join(" ") });
    let _ = writeln!(out, "max robot cost: {}", e.per_robot_cost.iter().copied().max().unwrap_or(0));
    let _ = writeln!(out, "witness: {}", r.assignment);
    let _ = writeln!(
        out,
        "stats: subsets={} nodes={} prunes={}",
        r.stats.subsets_examined, r.stats.nodes_expanded, r.stats.prunes
    );
    out
}

/// Parses `text` and runs `solver`, returning the rendered report.
pub fn cmd_solve(
    text: &str,
    solver: &str,
    budget_override: Option<Budget>,
    opts: &solvers::SolverOptions,
) -> Result<String, CliError> {
    if !solvers::is_known(solver) {
        return Err(CliError::Usage(format!(
            "unknown solver `{solver}`; known: {}",
            solvers::SOLVER_NAMES.join(", ")
        )));
    }
    let (inst, file_budget) = format::parse_instance(text).map_err(|e| CliError::Usage(e.to_string()))?;
    let budget = budget_override.unwrap_or(file_budget);
    let r = solvers::run(solver, &inst, budget, opts)?;
    Ok(render_report(&inst, budget, &r))
}
