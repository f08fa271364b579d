use crate::error::{Error, Result};
use crate::model::{Assignment, Budget, BudgetKind, Cost, Instance, SearchStats, SolveReport};

/// Limits for full enumeration of `(m + 1)^n` mappings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    pub max_robots: usize,
    pub max_tasks: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self { max_robots: 9, max_tasks: 6 }
    }
}

impl EnumerationCap {
    pub fn admits(&self, inst: &Instance) -> bool {
        inst.robot_count() <= self.max_robots && inst.task_count() <= self.max_tasks
    }
}

struct Enumerator<'a> {
    inst: &'a Instance,
    budget: Budget,
    choice: Vec<Option<usize>>,
    counts: Vec<usize>,
    task_cost: Vec<Cost>,
    best: Option<(usize, Vec<Option<usize>>)>,
    leaves: u64,
}

impl Enumerator<'_> {
    fn leaf(&mut self, total: Cost, robot_max: Cost) {
        self.leaves += 1;
        let inst = self.inst;
        let handled = |j: usize| self.counts[j] >= inst.requirement(j);
        let feasible = match self.budget.kind {
            BudgetKind::Total => total <= self.budget.value,
            BudgetKind::PerRobot => robot_max <= self.budget.value,
            BudgetKind::PerTask => {
                (0..inst.task_count()).all(|j| !handled(j) || self.task_cost[j] <= self.budget.value)
            }
        };
        if !feasible {
            return;
        }
        let count = (0..inst.task_count()).filter(|&j| handled(j)).count();
        if self.best.as_ref().is_none_or(|(b, _)| count > *b) {
            self.best = Some((count, self.choice.clone()));
        }
    }

    fn go(&mut self, robot: usize, total: Cost, robot_max: Cost) {
        if robot == self.inst.robot_count() {
            self.leaf(total, robot_max);
            return;
        }
        self.go(robot + 1, total, robot_max);
        for j in 0..self.inst.task_count() {
            let c = self.inst.cost(robot, j);
            self.choice[robot] = Some(j);
            self.counts[j] += 1;
            self.task_cost[j] += c;
            self.go(robot + 1, total + c, robot_max.max(c));
            self.counts[j] -= 1;
            self.task_cost[j] -= c;
        }
        self.choice[robot] = None;
    }
}

/// Ground truth by enumerating every map from robots to tasks or idle.
pub fn brute_force(inst: &Instance, budget: Budget) -> Result<SolveReport> {
    brute_force_with_cap(inst, budget, EnumerationCap::default())
}

pub fn brute_force_with_cap(inst: &Instance, budget: Budget, cap: EnumerationCap) -> Result<SolveReport> {
    if !cap.admits(inst) {
        return Err(Error::CapExceeded(format!(
            "n={} m={} exceeds n<={} m<={}",
            inst.robot_count(),
            inst.task_count(),
            cap.max_robots,
            cap.max_tasks
        )));
    }
    let mut e = Enumerator {
        inst,
        budget,
        choice: vec![None; inst.robot_count()],
        counts: vec![0; inst.task_count()],
        task_cost: vec![0; inst.task_count()],
        best: None,
        leaves: 0,
    };
    e.go(0, 0, 0);
    let (_, mapping) = e.best.expect("the idle assignment is always feasible");
    let assignment = Assignment::from_vec(mapping).pruned(inst);
    let stats = SearchStats { nodes_expanded: e.leaves, ..SearchStats::default() };
    Ok(SolveReport::from_assignment(inst, assignment, "brute-force", true, stats))
}
