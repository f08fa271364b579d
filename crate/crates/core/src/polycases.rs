//! Polynomial-time solvers for restricted inputs: handling every task at
//! minimum cost, symmetric costs, and requirements of at most two.

use crate::error::{Error, Result};
use crate::matching::{min_cost_b_matching, min_weight_perfect_matching, BipartiteDemandGraph, GeneralWeightedGraph};
use crate::model::{restrict_by_robot_budget, Assignment, BudgetKind, Cost, Instance, SearchStats, SolveReport};

/// Minimum total cost of handling all tasks, with the witness.
pub fn min_cost_handle_all(inst: &Instance) -> Result<(Cost, Assignment)> {
    let n = inst.robot_count();
    let m = inst.task_count();
    let need = inst.total_requirement();
    if need > n {
        return Err(Error::Infeasible(format!("{need} robots required, {n} available")));
    }
    let mut demands = inst.requirements.clone();
    demands.push(n - need);
    let costs: Vec<Vec<Cost>> = inst
        .costs
        .iter()
        .map(|row| row.iter().copied().chain(std::iter::once(0)).collect())
        .collect();
    let g = BipartiteDemandGraph::complete(demands, &costs)?;
    let bm = min_cost_b_matching(&g)?;
    let a = Assignment::from_pairs(n, bm.pairs.iter().filter(|&&(j, _)| j < m).map(|&(j, i)| (i, j)));
    Ok((bm.cost, a))
}

fn require_symmetric(inst: &Instance) -> Result<&[Cost]> {
    inst.symmetric_costs()
        .ok_or_else(|| Error::PreconditionViolated("costs are not symmetric across robots".into()))
}

/// Gives the tasks in `accepted` their robots in index order.
fn hand_out(inst: &Instance, accepted: &[usize]) -> Assignment {
    let mut a = Assignment::idle(inst.robot_count());
    let mut next = 0;
    for &j in accepted {
        for _ in 0..inst.requirement(j) {
            a.set(next, Some(j));
            next += 1;
        }
    }
    a
}

/// Symmetric costs with a common requirement under a total budget: cheapest tasks first.
pub fn solve_symmetric_uniform_total(inst: &Instance, w: Cost) -> Result<SolveReport> {
    let c = require_symmetric(inst)?;
    if !inst.is_uniform() && inst.task_count() > 0 {
        return Err(Error::PreconditionViolated("requirements are not uniform".into()));
    }
    let mut order: Vec<usize> = (0..inst.task_count()).collect();
    order.sort_by_key(|&j| (c[j], j));
    let mut left = inst.robot_count();
    let mut spent: Cost = 0;
    let mut accepted = Vec::new();
    for j in order {
        let q = inst.requirement(j);
        let cost = c[j].saturating_mul(q as Cost);
        if q > left || spent.saturating_add(cost) > w {
            break;
        }
        left -= q;
        spent += cost;
        accepted.push(j);
    }
    let a = hand_out(inst, &accepted);
    Ok(SolveReport::from_assignment(inst, a, "symmetric-uniform", true, SearchStats::default()))
}

fn symmetric_task_among(inst: &Instance, c: &[Cost], tasks: impl Iterator<Item = usize>, w: Cost) -> Assignment {
    let mut order: Vec<usize> = tasks.collect();
    if !inst.is_uniform() {
        order.sort_by_key(|&j| (inst.requirement(j), c[j], j));
    } else {
        order.sort_by_key(|&j| (c[j], j));
    }
    let mut left = inst.robot_count();
    let mut accepted = Vec::new();
    for j in order {
        let q = inst.requirement(j);
        if q > left {
            break;
        }
        if c[j].saturating_mul(q as Cost) <= w {
            left -= q;
            accepted.push(j);
        }
    }
    hand_out(inst, &accepted)
}

/// Symmetric costs under a per-task budget: affordable tasks by ascending requirement.
pub fn solve_symmetric_task(inst: &Instance, w: Cost) -> Result<SolveReport> {
    let c = require_symmetric(inst)?;
    let a = symmetric_task_among(inst, c, 0..inst.task_count(), w);
    Ok(SolveReport::from_assignment(inst, a, "symmetric-task", true, SearchStats::default()))
}

/// Symmetric costs under a per-robot budget.
pub fn solve_symmetric_robot(inst: &Instance, w: Cost) -> Result<SolveReport> {
    let c = require_symmetric(inst)?;
    let kept: Vec<usize> = (0..inst.task_count()).filter(|&j| c[j] <= w).collect();
    let cap = kept.iter().map(|&j| c[j].saturating_mul(inst.requirement(j) as Cost)).max().unwrap_or(0);
    let a = symmetric_task_among(inst, c, kept.into_iter(), cap);
    Ok(SolveReport::from_assignment(inst, a, "symmetric-robot", true, SearchStats::default()))
}

fn require_q2(inst: &Instance) -> Result<()> {
    if inst.q_star() > 2 {
        return Err(Error::PreconditionViolated(format!("largest requirement is {}, expected at most 2", inst.q_star())));
    }
    Ok(())
}

/// Minimum total cost of handling exactly `k` tasks when every requirement is 1 or 2.
///
/// Each task becomes two twin slots joined by a zero-weight skip edge, each
/// requirement-1 task gets a private zero-cost helper robot, and `n' - 2k`
/// absorbers soak up the robots left over, where `n'` counts helpers too. A
/// perfect matching then fills both slots of exactly `k` tasks.
pub fn min_cost_exactly_k_q2(inst: &Instance, k: usize) -> Result<(Cost, Assignment)> {
    require_q2(inst)?;
    let n = inst.robot_count();
    let m = inst.task_count();
    if k > m {
        return Err(Error::InvalidInput(format!("k={k} exceeds task count {m}")));
    }
    let singles: Vec<usize> = (0..m).filter(|&j| inst.requirement(j) == 1).collect();
    let n_all = n + singles.len();
    if 2 * k > n_all {
        return Err(Error::Infeasible(format!("{} slots needed, {n_all} robots including helpers", 2 * k)));
    }
    // vertices: robots 0..n, helpers n..n_all, twins, absorbers
    let twin = |j: usize, side: usize| n_all + 2 * j + side;
    let absorbers = n_all - 2 * k;
    let first_absorber = n_all + 2 * m;
    let mut g = GeneralWeightedGraph::new(first_absorber + absorbers);
    for j in 0..m {
        g.add_edge(twin(j, 0), twin(j, 1), 0)?;
        for i in 0..n {
            g.add_edge(i, twin(j, 0), inst.cost(i, j))?;
            g.add_edge(i, twin(j, 1), inst.cost(i, j))?;
        }
    }
    for (h, &j) in singles.iter().enumerate() {
        g.add_edge(n + h, twin(j, 0), 0)?;
        g.add_edge(n + h, twin(j, 1), 0)?;
    }
    for x in 0..absorbers {
        for v in 0..n_all {
            g.add_edge(v, first_absorber + x, 0)?;
        }
    }
    let pm = min_weight_perfect_matching(&g)?;
    let mut a = Assignment::idle(n);
    for i in 0..n {
        let v = pm.mate[i];
        if (n_all..first_absorber).contains(&v) {
            a.set(i, Some((v - n_all) / 2));
        }
    }
    // a requirement-1 task holding two real robots keeps the cheaper one
    for &j in &singles {
        let on: Vec<usize> = a.robots_on(j).collect();
        if on.len() == 2 {
            let drop = if inst.cost(on[1], j) < inst.cost(on[0], j) { on[0] } else { on[1] };
            a.set(drop, None);
        }
    }
    let cost = a.pairs().map(|(i, j)| inst.cost(i, j)).sum();
    Ok((cost, a))
}

/// Minimum cost of handling exactly `k` tasks for every `k = 0..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCostCurve {
    pub entries: Vec<Option<(Cost, Assignment)>>,
}

impl KCostCurve {
    pub fn cost(&self, k: usize) -> Option<Cost> {
        self.entries.get(k).and_then(|e| e.as_ref().map(|(c, _)| *c))
    }

    /// Whether costs never decrease across feasible entries.
    pub fn is_monotone(&self) -> bool {
        let feasible: Vec<Cost> = self.entries.iter().flatten().map(|(c, _)| *c).collect();
        feasible.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn k_cost_curve(inst: &Instance) -> Result<KCostCurve> {
    require_q2(inst)?;
    let mut entries = Vec::with_capacity(inst.task_count() + 1);
    for k in 0..=inst.task_count() {
        entries.push(match min_cost_exactly_k_q2(inst, k) {
            Ok(e) => Some(e),
            Err(Error::Infeasible(_)) => None,
            Err(e) => return Err(e),
        });
    }
    Ok(KCostCurve { entries })
}

/// Requirements of at most two under a total or per-robot budget, by binary
/// search on the number of tasks handled.
pub fn solve_q2(inst: &Instance, kind: BudgetKind, w: Cost) -> Result<SolveReport> {
    require_q2(inst)?;
    let (work, limit) = match kind {
        BudgetKind::Total => (inst.clone(), w),
        BudgetKind::PerRobot => {
            (restrict_by_robot_budget(inst, w), (inst.robot_count() as Cost).saturating_mul(w))
        }
        BudgetKind::PerTask => {
            return Err(Error::PreconditionViolated("per-task budgets are not supported here".into()))
        }
    };
    let mut stats = SearchStats::default();
    let mut best = Assignment::idle(inst.robot_count());
    let (mut lo, mut hi) = (1, inst.task_count());
    while lo <= hi {
        let mid = lo + (hi - lo) / 2;
        stats.subsets_examined += 1;
        match min_cost_exactly_k_q2(&work, mid) {
            Ok((cost, a)) if cost <= limit => {
                best = a;
                lo = mid + 1;
            }
            Ok(_) | Err(Error::Infeasible(_)) => hi = mid - 1,
            Err(e) => return Err(e),
        }
    }
    Ok(SolveReport::from_assignment(inst, best, "q2", true, stats))
}
