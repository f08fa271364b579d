//! Instances, budgets, assignments and the objective shared by every solver.
//!
//! An [`Instance`] is `n` robots, `m` tasks with requirements `q_j >= 1`, and an
//! `n x m` matrix of nonnegative integer costs. Each robot works on at most one
//! task ([`Assignment`] is a total vector with an explicit idle value), and a task
//! counts as handled once at least `q_j` robots are assigned to it.

use std::fmt;

use crate::error::{Error, Result};

/// Abstract integer cost unit.
pub type Cost = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }
}

/// Robot and task coordinates for location-based costs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Locations {
    pub robots: Vec<Point>,
    pub tasks: Vec<Point>,
    /// Fixed-point multiplier applied to the Euclidean distance before rounding.
    pub scale: i64,
}

/// Optional structure tags. A present tag is a claim that [`Instance::validate`] checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Structure {
    /// `c_ij = c_j` for every robot.
    pub symmetric: Option<Vec<Cost>>,
    /// `q_j = q` for every task.
    pub uniform: Option<usize>,
    pub locations: Option<Locations>,
}

/// Scaled Euclidean distance, rounded half-up, in exact integer arithmetic.
pub fn location_cost(robot: Point, task: Point, scale: i64) -> Cost {
    let dx = (robot.x - task.x) as i128;
    let dy = (robot.y - task.y) as i128;
    let s = scale as i128;
    // round(s * sqrt(d2)) = floor((floor(2 * s * sqrt(d2)) + 1) / 2)
    let four_s2d2 = (4 * s * s * (dx * dx + dy * dy)) as u128;
    four_s2d2.isqrt().div_ceil(2) as Cost
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    pub robot_count: usize,
    pub requirements: Vec<usize>,
    /// Row-major: `costs[i][j]` is the cost of robot `i` on task `j`.
    pub costs: Vec<Vec<Cost>>,
    pub structure: Structure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoRobots,
    RowCount { expected: usize, found: usize },
    RowLength { robot: usize, expected: usize, found: usize },
    NegativeCost { robot: usize, task: usize, cost: Cost },
    RequirementBelowOne { task: usize },
    SymmetricTagFalse { robot: usize, task: usize },
    UniformTagFalse { task: usize },
    LocationTagFalse { robot: usize, task: usize, expected: Cost, found: Cost },
    LocationShape,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoRobots => write!(f, "robot count is zero"),
            Violation::RowCount { expected, found } => {
                write!(f, "cost matrix has {found} rows, expected {expected}")
            }
            Violation::RowLength { robot, expected, found } => {
                write!(f, "cost row {robot} has {found} entries, expected {expected}")
            }
            Violation::NegativeCost { robot, task, cost } => {
                write!(f, "negative cost {cost} at robot {robot}, task {task}")
            }
            Violation::RequirementBelowOne { task } => {
                write!(f, "requirement below 1 at task {task}")
            }
            Violation::SymmetricTagFalse { robot, task } => {
                write!(f, "symmetric tag false at robot {robot}, task {task}")
            }
            Violation::UniformTagFalse { task } => write!(f, "uniform tag false at task {task}"),
            Violation::LocationTagFalse { robot, task, expected, found } => write!(
                f,
                "location tag false at robot {robot}, task {task}: distance gives {expected}, matrix has {found}"
            ),
            Violation::LocationShape => write!(f, "location tag point counts do not match instance"),
        }
    }
}

fn violations_to_error(v: Vec<Violation>) -> Error {
    let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
    Error::InvalidInput(msgs.join("; "))
}

impl Instance {
    /// General cost matrix. Symmetric and uniform tags are inferred.
    pub fn new(robot_count: usize, requirements: Vec<usize>, costs: Vec<Vec<Cost>>) -> Result<Self> {
        let mut inst = Self { robot_count, requirements, costs, structure: Structure::default() };
        inst.check()?;
        inst.structure = inst.inferred_structure();
        Ok(inst)
    }

    /// Symmetric costs given as one value per task.
    pub fn symmetric(robot_count: usize, requirements: Vec<usize>, per_task: Vec<Cost>) -> Result<Self> {
        if per_task.len() != requirements.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} task costs for {} tasks",
                per_task.len(),
                requirements.len()
            )));
        }
        let costs = vec![per_task; robot_count];
        Self::new(robot_count, requirements, costs)
    }

    /// Costs derived from robot and task points at the given scale.
    pub fn located(requirements: Vec<usize>, robots: Vec<Point>, tasks: Vec<Point>, scale: i64) -> Result<Self> {
        if tasks.len() != requirements.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} task points for {} tasks",
                tasks.len(),
                requirements.len()
            )));
        }
        if scale < 0 {
            return Err(Error::InvalidInput(format!("negative location scale {scale}")));
        }
        let costs = robots
            .iter()
            .map(|&r| tasks.iter().map(|&t| location_cost(r, t, scale)).collect())
            .collect();
        let mut inst = Self::new(robots.len(), requirements, costs)?;
        inst.structure.locations = Some(Locations { robots, tasks, scale });
        inst.check()?;
        Ok(inst)
    }

    fn check(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(violations_to_error(v))
        }
    }

    pub fn robot_count(&self) -> usize {
        self.robot_count
    }

    pub fn task_count(&self) -> usize {
        self.requirements.len()
    }

    #[inline]
    pub fn cost(&self, robot: usize, task: usize) -> Cost {
        self.costs[robot][task]
    }

    #[inline]
    pub fn requirement(&self, task: usize) -> usize {
        self.requirements[task]
    }

    /// `q* = max_j q_j`, zero when there are no tasks.
    pub fn q_star(&self) -> usize {
        self.requirements.iter().copied().max().unwrap_or(0)
    }

    pub fn total_requirement(&self) -> usize {
        self.requirements.iter().sum()
    }

    pub fn max_cost(&self) -> Cost {
        self.costs.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn symmetric_costs(&self) -> Option<&[Cost]> {
        self.structure.symmetric.as_deref()
    }

    pub fn is_symmetric(&self) -> bool {
        self.structure.symmetric.is_some()
    }

    pub fn is_uniform(&self) -> bool {
        self.structure.uniform.is_some()
    }

    /// Tags that actually hold for the current data. Location tags are never
    /// inferred; they are kept only if they still match.
    pub fn inferred_structure(&self) -> Structure {
        let m = self.task_count();
        let symmetric = match self.costs.first() {
            Some(first) if self.costs.len() == self.robot_count && first.len() == m => {
                self.costs.iter().all(|row| row == first).then(|| first.clone())
            }
            _ => None,
        };
        let uniform = match self.requirements.first() {
            Some(&q) if self.requirements.iter().all(|&x| x == q) => Some(q),
            _ => None,
        };
        let locations = self.structure.locations.clone().filter(|loc| self.location_mismatches(loc).is_empty());
        Structure { symmetric, uniform, locations }
    }

    fn location_mismatches(&self, loc: &Locations) -> Vec<Violation> {
        if loc.robots.len() != self.robot_count || loc.tasks.len() != self.task_count() {
            return vec![Violation::LocationShape];
        }
        let mut out = Vec::new();
        for (i, &r) in loc.robots.iter().enumerate() {
            for (j, &t) in loc.tasks.iter().enumerate() {
                let expected = location_cost(r, t, loc.scale);
                let found = self.costs.get(i).and_then(|row| row.get(j)).copied();
                if let Some(found) = found {
                    if found != expected {
                        out.push(Violation::LocationTagFalse { robot: i, task: j, expected, found });
                    }
                }
            }
        }
        out
    }

    /// Every invariant violation; empty means the instance is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.robot_count;
        let m = self.task_count();
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::NoRobots);
        }
        if self.costs.len() != n {
            out.push(Violation::RowCount { expected: n, found: self.costs.len() });
        }
        for (i, row) in self.costs.iter().enumerate() {
            if row.len() != m {
                out.push(Violation::RowLength { robot: i, expected: m, found: row.len() });
            }
            for (j, &c) in row.iter().enumerate() {
                if c < 0 {
                    out.push(Violation::NegativeCost { robot: i, task: j, cost: c });
                }
            }
        }
        for (j, &q) in self.requirements.iter().enumerate() {
            if q < 1 {
                out.push(Violation::RequirementBelowOne { task: j });
            }
        }
        if let Some(sym) = &self.structure.symmetric {
            if sym.len() != m {
                out.push(Violation::SymmetricTagFalse { robot: 0, task: sym.len().min(m) });
            }
            'scan: for (i, row) in self.costs.iter().enumerate() {
                for (j, (&c, &cj)) in row.iter().zip(sym.iter()).enumerate() {
                    if c != cj {
                        out.push(Violation::SymmetricTagFalse { robot: i, task: j });
                        break 'scan;
                    }
                }
            }
        }
        if let Some(q) = self.structure.uniform {
            if let Some(j) = self.requirements.iter().position(|&x| x != q) {
                out.push(Violation::UniformTagFalse { task: j });
            }
        }
        if let Some(loc) = &self.structure.locations {
            out.extend(self.location_mismatches(loc));
        }
        out
    }
}

/// Free-standing form of [`Instance::validate`].
pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    inst.validate()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BudgetKind {
    /// Sum of all assigned pair costs.
    Total,
    /// Cost of each handled task.
    PerTask,
    /// Cost of each robot's single assigned pair.
    PerRobot,
}

impl BudgetKind {
    pub const ALL: [BudgetKind; 3] = [BudgetKind::Total, BudgetKind::PerTask, BudgetKind::PerRobot];

    pub fn as_str(self) -> &'static str {
        match self {
            BudgetKind::Total => "total",
            BudgetKind::PerTask => "task",
            BudgetKind::PerRobot => "robot",
        }
    }
}

impl fmt::Display for BudgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BudgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(BudgetKind::Total),
            "task" | "per-task" => Ok(BudgetKind::PerTask),
            "robot" | "per-robot" => Ok(BudgetKind::PerRobot),
            other => Err(Error::InvalidInput(format!("unknown budget kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget {
    pub kind: BudgetKind,
    pub value: Cost,
}

impl Budget {
    pub const fn new(kind: BudgetKind, value: Cost) -> Self {
        Self { kind, value }
    }

    pub const fn total(value: Cost) -> Self {
        Self::new(BudgetKind::Total, value)
    }

    pub const fn per_task(value: Cost) -> Self {
        Self::new(BudgetKind::PerTask, value)
    }

    pub const fn per_robot(value: Cost) -> Self {
        Self::new(BudgetKind::PerRobot, value)
    }
}

/// Robot-to-task map; `None` is idle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<Option<usize>>);

impl Assignment {
    pub fn idle(robot_count: usize) -> Self {
        Self(vec![None; robot_count])
    }

    pub fn from_vec(mapping: Vec<Option<usize>>) -> Self {
        Self(mapping)
    }

    /// Builds an assignment from `(robot, task)` pairs. Later pairs overwrite earlier ones.
    pub fn from_pairs(robot_count: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut a = Self::idle(robot_count);
        for (r, t) in pairs {
            a.0[r] = Some(t);
        }
        a
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, robot: usize) -> Option<usize> {
        self.0[robot]
    }

    pub fn set(&mut self, robot: usize, task: Option<usize>) {
        self.0[robot] = task;
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.0
    }

    pub fn robots_on(&self, task: usize) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(move |(_, t)| **t == Some(task)).map(|(i, _)| i)
    }

    /// `(robot, task)` pairs in robot order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().filter_map(|(i, t)| t.map(|t| (i, t)))
    }

    /// Drops robots sitting on tasks that are not handled.
    pub fn pruned(&self, inst: &Instance) -> Self {
        let mut counts = vec![0usize; inst.task_count()];
        for (_, t) in self.pairs() {
            counts[t] += 1;
        }
        Self(
            self.0
                .iter()
                .map(|t| t.filter(|&t| counts[t] >= inst.requirement(t)))
                .collect(),
        )
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (r, t) in self.pairs() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "r{}->t{}", r + 1, t + 1)?;
        }
        if first {
            f.write_str("(idle)")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub handled: Vec<bool>,
    pub handled_count: usize,
    pub total_cost: Cost,
    /// Cost of the robots assigned to each task; zero for unhandled tasks.
    pub per_task_cost: Vec<Cost>,
    pub per_robot_cost: Vec<Cost>,
}

pub fn evaluate(inst: &Instance, a: &Assignment) -> Result<Evaluation> {
    let n = inst.robot_count();
    let m = inst.task_count();
    if a.len() != n {
        return Err(Error::DimensionMismatch(format!("assignment covers {} robots, instance has {n}", a.len())));
    }
    let mut counts = vec![0usize; m];
    let mut raw_task_cost = vec![0 as Cost; m];
    let mut per_robot_cost = vec![0 as Cost; n];
    let mut total_cost: Cost = 0;
    for (i, t) in a.pairs() {
        if t >= m {
            return Err(Error::DimensionMismatch(format!("robot {i} assigned to task {t}, only {m} tasks")));
        }
        let c = inst.cost(i, t);
        counts[t] += 1;
        raw_task_cost[t] += c;
        per_robot_cost[i] = c;
        total_cost += c;
    }
    let handled: Vec<bool> = (0..m).map(|j| counts[j] >= inst.requirement(j)).collect();
    let per_task_cost = raw_task_cost
        .iter()
        .zip(&handled)
        .map(|(&c, &h)| if h { c } else { 0 })
        .collect();
    Ok(Evaluation {
        handled_count: handled.iter().filter(|&&h| h).count(),
        handled,
        total_cost,
        per_task_cost,
        per_robot_cost,
    })
}

/// Whether `a` respects budget `b`. Dimension errors count as infeasible.
pub fn is_feasible(inst: &Instance, b: Budget, a: &Assignment) -> bool {
    let Ok(e) = evaluate(inst, a) else {
        return false;
    };
    match b.kind {
        BudgetKind::Total => e.total_cost <= b.value,
        BudgetKind::PerTask => e.per_task_cost.iter().all(|&c| c <= b.value),
        BudgetKind::PerRobot => e.per_robot_cost.iter().all(|&c| c <= b.value),
    }
}

/// Replaces every cost above `w` by `n*w + 1`, turning a per-robot budget `w`
/// into a total budget `n*w`.
pub fn restrict_by_robot_budget(inst: &Instance, w: Cost) -> Instance {
    let big = (inst.robot_count() as Cost).saturating_mul(w).saturating_add(1);
    let costs = inst
        .costs
        .iter()
        .map(|row| row.iter().map(|&c| if c > w { big } else { c }).collect())
        .collect();
    let mut out = Instance {
        robot_count: inst.robot_count,
        requirements: inst.requirements.clone(),
        costs,
        structure: inst.structure.clone(),
    };
    out.structure = out.inferred_structure();
    out
}

/// Counters reported by searching solvers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SearchStats {
    pub subsets_examined: u64,
    pub nodes_expanded: u64,
    pub prunes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub handled_count: usize,
    pub assignment: Assignment,
    pub solver: &'static str,
    /// Set only by exact solvers.
    pub optimal: bool,
    pub stats: SearchStats,
}

impl SolveReport {
    /// Report whose count is recomputed from the witness.
    pub fn from_assignment(
        inst: &Instance,
        assignment: Assignment,
        solver: &'static str,
        optimal: bool,
        stats: SearchStats,
    ) -> Self {
        let handled_count = evaluate(inst, &assignment).map(|e| e.handled_count).unwrap_or(0);
        Self { handled_count, assignment, solver, optimal, stats }
    }
}
