//! Greedy allocation: repeatedly commit the globally cheapest completing set.

use crate::model::{Assignment, Cost, Instance, SearchStats, SolveReport};

enum Verdict {
    Accept,
    Drop,
    Stop,
}

/// Cheapest `q` free robots for `task`, ties by robot index, returned sorted.
fn cheapest_set(inst: &Instance, free: &[bool], task: usize) -> Option<(Cost, Vec<usize>)> {
    let q = inst.requirement(task);
    let mut robots: Vec<usize> = (0..inst.robot_count()).filter(|&i| free[i]).collect();
    if robots.len() < q {
        return None;
    }
    robots.sort_by_key(|&i| (inst.cost(i, task), i));
    robots.truncate(q);
    let cost = robots.iter().map(|&i| inst.cost(i, task)).fold(0, Cost::saturating_add);
    robots.sort_unstable();
    Some((cost, robots))
}

fn run(inst: &Instance, mut judge: impl FnMut(Cost) -> Verdict) -> (Assignment, SearchStats) {
    let n = inst.robot_count();
    let mut free = vec![true; n];
    let mut open: Vec<usize> = (0..inst.task_count()).collect();
    let mut a = Assignment::idle(n);
    let mut stats = SearchStats::default();
    loop {
        stats.nodes_expanded += 1;
        let mut best: Option<(Cost, usize, Vec<usize>)> = None;
        open.retain(|&j| match cheapest_set(inst, &free, j) {
            None => false,
            Some((cost, set)) => {
                stats.subsets_examined += 1;
                if best.as_ref().is_none_or(|(c, k, s)| (cost, j, &set) < (*c, *k, s)) {
                    best = Some((cost, j, set));
                }
                true
            }
        });
        let Some((cost, task, set)) = best else { break };
        match judge(cost) {
            Verdict::Stop => break,
            Verdict::Drop => {
                stats.prunes += 1;
                open.retain(|&j| j != task);
            }
            Verdict::Accept => {
                for &i in &set {
                    free[i] = false;
                    a.set(i, Some(task));
                }
                open.retain(|&j| j != task);
            }
        }
    }
    (a, stats)
}

/// Greedy under a total budget; stops at the first set that would overrun `w`.
pub fn greedy_total(inst: &Instance, w: Cost) -> SolveReport {
    let mut spent: Cost = 0;
    let (a, stats) = run(inst, |cost| {
        if spent.saturating_add(cost) > w {
            Verdict::Stop
        } else {
            spent += cost;
            Verdict::Accept
        }
    });
    SolveReport::from_assignment(inst, a, "greedy-total", false, stats)
}

/// Greedy under a per-task budget; unaffordable tasks are dropped for good.
pub fn greedy_task(inst: &Instance, w: Cost) -> SolveReport {
    let (a, stats) = run(inst, |cost| if cost > w { Verdict::Drop } else { Verdict::Accept });
    SolveReport::from_assignment(inst, a, "greedy-task", false, stats)
}

/// Greedy under a per-robot budget.
///
/// Pairs above `w` are priced at `m*n*max_c + 1` and the total-budget greedy
/// runs with budget `m*n*max_c`, so no such pair is ever committed.
pub fn greedy_robot(inst: &Instance, w: Cost) -> SolveReport {
    let n = inst.robot_count();
    let m = inst.task_count();
    let cap = (m as Cost).saturating_mul(n as Cost).saturating_mul(inst.max_cost().max(0));
    let big = cap.saturating_add(1);
    let mut priced = inst.clone();
    for row in priced.costs.iter_mut() {
        for c in row.iter_mut() {
            if *c > w {
                *c = big;
            }
        }
    }
    priced.structure = priced.inferred_structure();
    let mut a = greedy_total(&priced, cap).assignment;
    for j in 0..m {
        let on: Vec<usize> = a.robots_on(j).collect();
        if on.iter().any(|&i| inst.cost(i, j) > w) {
            for i in on {
                a.set(i, None);
            }
        }
    }
    let stats = SearchStats::default();
    SolveReport::from_assignment(inst, a, "greedy-robot", false, stats)
}
