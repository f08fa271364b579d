//! Local search over a set-packing view of the per-task and per-robot problems.
//!
//! Every task is padded to requirement `q*` with dummy robots reserved for it,
//! so each candidate set is one task plus `q*` robots. Two candidates are
//! disjoint exactly when their tasks differ and their real robots do not
//! overlap, because dummies are private to their task.

use crate::error::{Error, Result};
use crate::exact::Combinations;
use crate::model::{Assignment, BudgetKind, Cost, Instance, SearchStats, SolveReport};

pub const DEFAULT_PACKING_CAP: usize = 4;
pub const DEFAULT_SWAP_DEPTH: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub task: usize,
    /// Real robots, ascending.
    pub robots: Vec<usize>,
    /// Dummy robots padding the set up to `q*`.
    pub dummies: usize,
    pub cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingFamily {
    /// Tasks, real robots and dummies.
    pub universe_size: usize,
    pub set_size: usize,
    pub sets: Vec<CandidateSet>,
}

/// Every feasible task-plus-robots set under a per-task or per-robot budget `w`.
pub fn packing_family(inst: &Instance, kind: BudgetKind, w: Cost) -> Result<PackingFamily> {
    if kind == BudgetKind::Total {
        return Err(Error::PreconditionViolated("set packing needs a per-task or per-robot budget".into()));
    }
    let n = inst.robot_count();
    let m = inst.task_count();
    let qs = inst.q_star();
    let mut sets = Vec::new();
    for j in 0..m {
        let q = inst.requirement(j);
        let usable: Vec<usize> = match kind {
            BudgetKind::PerRobot => (0..n).filter(|&i| inst.cost(i, j) <= w).collect(),
            _ => (0..n).collect(),
        };
        for pick in Combinations::new(usable.len(), q) {
            let robots: Vec<usize> = pick.iter().map(|&k| usable[k]).collect();
            let cost = robots.iter().map(|&i| inst.cost(i, j)).fold(0, Cost::saturating_add);
            if kind == BudgetKind::PerTask && cost > w {
                continue;
            }
            sets.push(CandidateSet { task: j, robots, dummies: qs - q, cost });
        }
    }
    let universe_size = m + n + (0..m).map(|j| qs - inst.requirement(j)).sum::<usize>();
    Ok(PackingFamily { universe_size, set_size: qs + 1, sets })
}

struct State<'a> {
    family: &'a PackingFamily,
    task_used: Vec<bool>,
    robot_used: Vec<bool>,
    packed: Vec<usize>,
}

impl State<'_> {
    fn fits(&self, s: usize) -> bool {
        let c = &self.family.sets[s];
        !self.task_used[c.task] && c.robots.iter().all(|&i| !self.robot_used[i])
    }

    fn mark(&mut self, s: usize, used: bool) {
        let c = &self.family.sets[s];
        self.task_used[c.task] = used;
        for &i in &c.robots {
            self.robot_used[i] = used;
        }
    }

    fn insert(&mut self, s: usize) {
        self.mark(s, true);
        self.packed.push(s);
    }

    fn fill(&mut self) {
        for s in 0..self.family.sets.len() {
            if self.fits(s) {
                self.insert(s);
            }
        }
    }

    /// Finds `need` pairwise disjoint sets among `pool` that fit the current state.
    fn pick(&mut self, pool: &[usize], from: usize, need: usize, out: &mut Vec<usize>) -> bool {
        if need == 0 {
            return true;
        }
        for k in from..pool.len() {
            let s = pool[k];
            if self.fits(s) {
                self.mark(s, true);
                out.push(s);
                if self.pick(pool, k + 1, need - 1, out) {
                    self.mark(s, false);
                    return true;
                }
                out.pop();
                self.mark(s, false);
            }
        }
        false
    }

    /// Swaps some `p <= depth` packed sets for `p + 1` others, if possible.
    fn improve(&mut self, depth: usize, stats: &mut SearchStats) -> bool {
        for p in 1..=depth.min(self.packed.len()) {
            for out_idx in Combinations::new(self.packed.len(), p) {
                stats.nodes_expanded += 1;
                let removed: Vec<usize> = out_idx.iter().map(|&k| self.packed[k]).collect();
                for &s in &removed {
                    self.mark(s, false);
                }
                // the packing is maximal, so every newcomer must touch a removed set
                let touches = |s: usize| {
                    let c = &self.family.sets[s];
                    removed.iter().any(|&r| {
                        let d = &self.family.sets[r];
                        d.task == c.task || c.robots.iter().any(|i| d.robots.contains(i))
                    })
                };
                let pool: Vec<usize> = (0..self.family.sets.len()).filter(|&s| self.fits(s) && touches(s)).collect();
                let mut chosen = Vec::new();
                if self.pick(&pool, 0, p + 1, &mut chosen) {
                    self.packed.retain(|s| !removed.contains(s));
                    for s in chosen {
                        self.insert(s);
                    }
                    return true;
                }
                for &s in &removed {
                    self.mark(s, true);
                }
            }
        }
        false
    }
}

/// Local search with the default cap on `q*`.
pub fn set_packing_local_search(inst: &Instance, kind: BudgetKind, w: Cost, depth: usize) -> Result<SolveReport> {
    set_packing_local_search_with_cap(inst, kind, w, depth, DEFAULT_PACKING_CAP)
}

pub fn set_packing_local_search_with_cap(
    inst: &Instance,
    kind: BudgetKind,
    w: Cost,
    depth: usize,
    cap: usize,
) -> Result<SolveReport> {
    if inst.q_star() > cap {
        return Err(Error::CapExceeded(format!("largest requirement {} exceeds packing cap {cap}", inst.q_star())));
    }
    let family = packing_family(inst, kind, w)?;
    let mut st = State {
        family: &family,
        task_used: vec![false; inst.task_count()],
        robot_used: vec![false; inst.robot_count()],
        packed: Vec::new(),
    };
    let mut stats = SearchStats { subsets_examined: family.sets.len() as u64, ..SearchStats::default() };
    st.fill();
    while st.improve(depth, &mut stats) {
        st.fill();
    }
    let mut packed = st.packed.clone();
    packed.sort_unstable();
    let sets = &family.sets;
    let pairs = packed.iter().flat_map(|&s| sets[s].robots.iter().map(move |&i| (i, sets[s].task)));
    let a = Assignment::from_pairs(inst.robot_count(), pairs);
    Ok(SolveReport::from_assignment(inst, a, "set-packing", false, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brute_force;
    use crate::model::{is_feasible, Budget};

    #[test]
    fn family_shapes() {
        let inst = Instance::new(3, vec![1, 2], vec![vec![1, 1], vec![2, 2], vec![3, 3]]).unwrap();
        let f = packing_family(&inst, BudgetKind::PerTask, 3).unwrap();
        assert_eq!(f.set_size, 3);
        assert_eq!(f.universe_size, 2 + 3 + 1);
        // task 0: any single robot; task 1: pairs costing at most 3
        assert_eq!(f.sets.len(), 3 + 1);
        assert!(f.sets.iter().all(|s| s.robots.len() + s.dummies + 1 == f.set_size));
        assert!(matches!(packing_family(&inst, BudgetKind::Total, 3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn diagonal() {
        let inst = Instance::new(2, vec![1, 1], vec![vec![1, 9], vec![9, 1]]).unwrap();
        let r = set_packing_local_search(&inst, BudgetKind::PerRobot, 1, 2).unwrap();
        assert_eq!(r.handled_count, 2);
        assert!(is_feasible(&inst, Budget::per_robot(1), &r.assignment));
    }

    #[test]
    fn swap_unblocks_middle_task() {
        // task 0 can only use robots 1,2 which block tasks 1 (robots 0,1) and 2 (robots 2,3)
        let costs = vec![vec![9, 1, 9], vec![1, 1, 9], vec![1, 9, 1], vec![9, 9, 1]];
        let inst = Instance::new(4, vec![2, 2, 2], costs).unwrap();
        assert_eq!(brute_force(&inst, Budget::per_robot(1)).unwrap().handled_count, 2);
        let greedy_only = set_packing_local_search(&inst, BudgetKind::PerRobot, 1, 0).unwrap();
        assert_eq!(greedy_only.handled_count, 1);
        let r = set_packing_local_search(&inst, BudgetKind::PerRobot, 1, 2).unwrap();
        assert_eq!(r.handled_count, 2);
        assert!(is_feasible(&inst, Budget::per_robot(1), &r.assignment));
    }

    #[test]
    fn cap_is_enforced() {
        let inst = Instance::new(5, vec![5], vec![vec![0]; 5]).unwrap();
        assert!(matches!(
            set_packing_local_search(&inst, BudgetKind::PerTask, 0, 2),
            Err(Error::CapExceeded(_))
        ));
        let r = set_packing_local_search_with_cap(&inst, BudgetKind::PerTask, 0, 2, 5).unwrap();
        assert_eq!(r.handled_count, 1);
    }
}
