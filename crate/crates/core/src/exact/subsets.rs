//! Subset scans for the total and per-robot budgets. Sizes are tried in
//! descending order and subsets of one size in lexicographic order, so the
//! first accepted subset is optimal and the witness is deterministic.

use crate::matching::{b_matching_feasible, min_cost_b_matching, BMatching, BipartiteDemandGraph};
use crate::model::{Assignment, Cost, Instance, SearchStats, SolveReport};

/// Lexicographic `k`-subsets of `0..m`.
pub(crate) struct Combinations {
    m: usize,
    idx: Vec<usize>,
    first: bool,
}

impl Combinations {
    pub fn new(m: usize, k: usize) -> Self {
        Self { m, idx: (0..k).collect(), first: k <= m }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.first {
            self.first = false;
            return Some(self.idx.clone());
        }
        let k = self.idx.len();
        if k > self.m {
            return None;
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.m - k + i {
                self.idx[i] += 1;
                for t in i + 1..k {
                    self.idx[t] = self.idx[t - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        None
    }
}

pub(crate) fn demands_for(inst: &Instance, subset: &[usize]) -> Vec<usize> {
    let mut d = vec![0; inst.task_count()];
    for &j in subset {
        d[j] = inst.requirement(j);
    }
    d
}

/// Min-cost allocation handling exactly the tasks in `subset`, if any exists.
pub fn min_cost_for_subset(inst: &Instance, subset: &[usize]) -> Option<BMatching> {
    let g = BipartiteDemandGraph::complete(demands_for(inst, subset), &inst.costs).ok()?;
    min_cost_b_matching(&g).ok()
}

pub(crate) fn assignment_from(inst: &Instance, m: &BMatching) -> Assignment {
    Assignment::from_pairs(inst.robot_count(), m.pairs.iter().map(|&(j, i)| (i, j)))
}

/// Largest task set whose min-cost b-matching fits the total budget `w`.
pub fn exact_total_budget(inst: &Instance, w: Cost) -> SolveReport {
    let m = inst.task_count();
    let n = inst.robot_count();
    let mut stats = SearchStats::default();
    for k in (1..=m).rev() {
        for subset in Combinations::new(m, k) {
            if subset.iter().map(|&j| inst.requirement(j)).sum::<usize>() > n {
                stats.prunes += 1;
                continue;
            }
            stats.subsets_examined += 1;
            if let Some(bm) = min_cost_for_subset(inst, &subset) {
                if bm.cost <= w {
                    let a = assignment_from(inst, &bm);
                    return SolveReport::from_assignment(inst, a, "exact-total", true, stats);
                }
            }
        }
    }
    SolveReport::from_assignment(inst, Assignment::idle(n), "exact-total", true, stats)
}

/// Largest task set coverable using only pairs with cost at most `w`.
pub fn exact_robot_budget(inst: &Instance, w: Cost) -> SolveReport {
    let m = inst.task_count();
    let n = inst.robot_count();
    let mut stats = SearchStats::default();
    let graph_for = |subset: &[usize]| {
        let mut g = BipartiteDemandGraph::complete(demands_for(inst, subset), &inst.costs)
            .expect("instance dimensions are consistent");
        for i in 0..n {
            for j in 0..m {
                if inst.cost(i, j) > w {
                    g.forbid(j, i);
                }
            }
        }
        g
    };
    for k in (1..=m).rev() {
        for subset in Combinations::new(m, k) {
            if subset.iter().map(|&j| inst.requirement(j)).sum::<usize>() > n {
                stats.prunes += 1;
                continue;
            }
            stats.subsets_examined += 1;
            let g = graph_for(&subset);
            if b_matching_feasible(&g) {
                let bm = min_cost_b_matching(&g).expect("feasible graph has a saturating matching");
                let a = assignment_from(inst, &bm);
                return SolveReport::from_assignment(inst, a, "exact-robot", true, stats);
            }
        }
    }
    SolveReport::from_assignment(inst, Assignment::idle(n), "exact-robot", true, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force;
    use crate::model::{is_feasible, Budget};

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn example1_total() {
        let inst = Instance::symmetric(4, vec![1, 2, 2], vec![100, 1, 1]).unwrap();
        let r = exact_total_budget(&inst, 100);
        assert_eq!(r.handled_count, 2);
        assert!(is_feasible(&inst, Budget::total(100), &r.assignment));
    }

    #[test]
    fn example2_total() {
        let inst = Instance::symmetric(100, vec![100, 2, 2], vec![1, 60, 60]).unwrap();
        let r = exact_total_budget(&inst, 250);
        assert_eq!(r.handled_count, 2);
        let e = crate::model::evaluate(&inst, &r.assignment).unwrap();
        assert_eq!(e.handled, vec![false, true, true]);
        assert_eq!(e.total_cost, 240);
    }

    #[test]
    fn zero_budget_positive_costs() {
        let inst = Instance::new(2, vec![1, 1], vec![vec![1, 2], vec![3, 1]]).unwrap();
        assert_eq!(exact_total_budget(&inst, 0).handled_count, 0);
    }

    #[test]
    fn robot_budget_examples() {
        let costs = vec![vec![1, 9], vec![9, 1], vec![1, 1]];
        let tight = Instance::new(3, vec![2, 2], costs.clone()).unwrap();
        assert_eq!(exact_robot_budget(&tight, 100).handled_count, 1);
        let inst = Instance::new(3, vec![1, 1], costs).unwrap();
        assert_eq!(brute_force(&inst, Budget::per_robot(1)).unwrap().handled_count, 2);
        let r = exact_robot_budget(&inst, 1);
        assert_eq!(r.handled_count, 2);
        assert!(is_feasible(&inst, Budget::per_robot(1), &r.assignment));
        assert_eq!(exact_robot_budget(&inst, 0).handled_count, 0);
    }

    #[test]
    fn robot_budget_at_max_cost_is_unbudgeted() {
        let inst = Instance::new(4, vec![2, 1, 2], vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5], vec![3, 5, 8]])
            .unwrap();
        let w = inst.max_cost();
        let oracle = brute_force(&inst, Budget::per_robot(w)).unwrap().handled_count;
        assert_eq!(oracle, 2);
        assert_eq!(exact_robot_budget(&inst, w).handled_count, oracle);
    }
}
