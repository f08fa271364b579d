//! Branch and bound for the per-task budget.
//!
//! Fixing which tasks are handled does not make this budget easy (it encodes
//! 3-partition), so the search branches on the robot set of each task
//! directly. Tasks are visited in index order; for each, every affordable
//! `q_j`-subset of the free robots is tried cheapest first, then the task is
//! skipped.

use crate::model::{Assignment, Cost, Instance, SearchStats, SolveReport};

struct Search<'a> {
    inst: &'a Instance,
    w: Cost,
    free: Vec<bool>,
    mapping: Vec<Option<usize>>,
    best: usize,
    best_mapping: Vec<Option<usize>>,
    ceiling: usize,
    stats: SearchStats,
}

impl Search<'_> {
    /// Optimistic count of tasks in `from..` that can still be handled:
    /// affordable ones only, packed by ascending requirement into the free robots.
    fn bound(&self, from: usize) -> usize {
        let mut free_costs: Vec<Cost> = Vec::new();
        let mut reqs: Vec<usize> = Vec::new();
        let free_count = self.free.iter().filter(|&&f| f).count();
        for j in from..self.inst.task_count() {
            let q = self.inst.requirement(j);
            if q > free_count {
                continue;
            }
            free_costs.clear();
            free_costs.extend((0..self.inst.robot_count()).filter(|&i| self.free[i]).map(|i| self.inst.cost(i, j)));
            free_costs.sort_unstable();
            if free_costs[..q].iter().sum::<Cost>() <= self.w {
                reqs.push(q);
            }
        }
        reqs.sort_unstable();
        let mut left = free_count;
        let mut count = 0;
        for q in reqs {
            if q > left {
                break;
            }
            left -= q;
            count += 1;
        }
        count
    }

    /// Affordable `q`-subsets of the free robots for `task`, cheapest first,
    /// ties in lexicographic robot order.
    fn candidate_sets(&self, task: usize) -> Vec<(Cost, Vec<usize>)> {
        let q = self.inst.requirement(task);
        let mut robots: Vec<usize> = (0..self.inst.robot_count()).filter(|&i| self.free[i]).collect();
        robots.sort_by_key(|&i| (self.inst.cost(i, task), i));
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(q);
        self.collect(task, &robots, 0, 0, q, &mut pick, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn collect(
        &self,
        task: usize,
        robots: &[usize],
        start: usize,
        cost: Cost,
        q: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<(Cost, Vec<usize>)>,
    ) {
        if pick.len() == q {
            let mut set = pick.clone();
            set.sort_unstable();
            out.push((cost, set));
            return;
        }
        let need = q - pick.len();
        for k in start..robots.len() {
            if robots.len() - k < need {
                break;
            }
            let r = robots[k];
            let c = cost + self.inst.cost(r, task);
            // robots are sorted by cost, so later picks are no cheaper
            if c > self.w {
                break;
            }
            pick.push(r);
            self.collect(task, robots, k + 1, c, q, pick, out);
            pick.pop();
        }
    }

    fn go(&mut self, task: usize, handled: usize) {
        self.stats.nodes_expanded += 1;
        if self.best == self.ceiling {
            return;
        }
        if task == self.inst.task_count() {
            if handled > self.best {
                self.best = handled;
                self.best_mapping = self.mapping.clone();
            }
            return;
        }
        if handled + self.bound(task) <= self.best {
            self.stats.prunes += 1;
            return;
        }
        for (_, set) in self.candidate_sets(task) {
            for &r in &set {
                self.free[r] = false;
                self.mapping[r] = Some(task);
            }
            self.go(task + 1, handled + 1);
            for &r in &set {
                self.free[r] = true;
                self.mapping[r] = None;
            }
            if self.best == self.ceiling {
                return;
            }
        }
        self.go(task + 1, handled);
    }
}

/// Most tasks handled with every handled task's cost at most `w`.
pub fn exact_task_budget(inst: &Instance, w: Cost) -> SolveReport {
    let n = inst.robot_count();
    let mut s = Search {
        inst,
        w,
        free: vec![true; n],
        mapping: vec![None; n],
        best: 0,
        best_mapping: vec![None; n],
        ceiling: 0,
        stats: SearchStats::default(),
    };
    s.ceiling = s.bound(0);
    s.go(0, 0);
    let stats = s.stats;
    SolveReport::from_assignment(inst, Assignment::from_vec(s.best_mapping), "exact-task", true, stats)
}
