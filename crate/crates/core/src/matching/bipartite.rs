use super::flow::{ArcId, FlowNetwork};
use crate::error::{Error, Result};
use crate::model::Cost;

/// Tasks with integer demands on one side, unit-capacity robots on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteDemandGraph {
    demands: Vec<usize>,
    robot_count: usize,
    /// `costs[task][robot]`; `None` marks a forbidden edge.
    costs: Vec<Vec<Option<Cost>>>,
}

/// Saturating matching as `(task, robot)` pairs, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMatching {
    pub pairs: Vec<(usize, usize)>,
    pub cost: Cost,
}

impl BipartiteDemandGraph {
    pub fn new(demands: Vec<usize>, robot_count: usize, costs: Vec<Vec<Option<Cost>>>) -> Result<Self> {
        if costs.len() != demands.len() || costs.iter().any(|row| row.len() != robot_count) {
            return Err(Error::DimensionMismatch(format!(
                "edge table must be {} tasks x {robot_count} robots",
                demands.len()
            )));
        }
        if costs.iter().flatten().flatten().any(|&c| c < 0) {
            return Err(Error::InvalidInput("negative edge cost".into()));
        }
        Ok(Self { demands, robot_count, costs })
    }

    /// Complete graph from a robot-major cost matrix (`costs[robot][task]`).
    pub fn complete(demands: Vec<usize>, costs: &[Vec<Cost>]) -> Result<Self> {
        let m = demands.len();
        let by_task = (0..m).map(|j| costs.iter().map(|row| Some(row[j])).collect()).collect();
        Self::new(demands, costs.len(), by_task)
    }

    pub fn forbid(&mut self, task: usize, robot: usize) {
        self.costs[task][robot] = None;
    }

    pub fn demands(&self) -> &[usize] {
        &self.demands
    }

    pub fn robot_count(&self) -> usize {
        self.robot_count
    }

    pub fn total_demand(&self) -> usize {
        self.demands.iter().sum()
    }

    fn network(&self) -> (FlowNetwork, Vec<(usize, usize, ArcId)>, usize, usize) {
        let m = self.demands.len();
        let n = self.robot_count;
        let source = m + n;
        let sink = source + 1;
        let mut g = FlowNetwork::new(m + n + 2);
        for (j, &d) in self.demands.iter().enumerate() {
            g.add_arc(source, j, d as i64, 0);
        }
        let mut edges = Vec::new();
        for (j, row) in self.costs.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if let Some(c) = *c {
                    edges.push((j, i, g.add_arc(j, m + i, 1, c)));
                }
            }
        }
        for i in 0..n {
            g.add_arc(m + i, sink, 1, 0);
        }
        (g, edges, source, sink)
    }
}

/// Minimum-cost matching saturating every demand, each robot used at most once.
pub fn min_cost_b_matching(g: &BipartiteDemandGraph) -> Result<BMatching> {
    let need = g.total_demand();
    if need > g.robot_count {
        return Err(Error::Infeasible(format!("demand {need} exceeds {} robots", g.robot_count)));
    }
    let (mut net, edges, s, t) = g.network();
    let cost = net
        .min_cost_flow(s, t, need as i64)
        .ok_or_else(|| Error::Infeasible("some demand cannot be saturated".into()))?;
    let mut pairs: Vec<(usize, usize)> =
        edges.iter().filter(|(_, _, id)| net.flow(*id) > 0).map(|&(j, i, _)| (j, i)).collect();
    pairs.sort_unstable();
    Ok(BMatching { pairs, cost })
}

/// Whether a matching saturating all demands exists (max-flow equals total demand).
pub fn b_matching_feasible(g: &BipartiteDemandGraph) -> bool {
    let need = g.total_demand() as i64;
    let (mut net, _, s, t) = g.network();
    net.max_flow(s, t, need) == need
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(g: &BipartiteDemandGraph) -> Option<Cost> {
        // every robot picks a task or idles; keep exact saturations
        let m = g.demands.len();
        let n = g.robot_count;
        let mut best: Option<Cost> = None;
        let mut choice = vec![0; n];
        loop {
            let mut counts = vec![0usize; m];
            let mut cost = 0;
            let mut ok = true;
            for (i, &c) in choice.iter().enumerate() {
                if c < m {
                    counts[c] += 1;
                    match g.costs[c][i] {
                        Some(x) => cost += x,
                        None => ok = false,
                    }
                }
            }
            if ok && counts == g.demands {
                best = Some(best.map_or(cost, |b: Cost| b.min(cost)));
            }
            let mut k = 0;
            loop {
                if k == n {
                    return best;
                }
                choice[k] += 1;
                if choice[k] <= m {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn three_robots_two_tasks() {
        let g = BipartiteDemandGraph::complete(vec![1, 2], &[vec![1, 4], vec![2, 3], vec![5, 3]]).unwrap();
        assert_eq!(oracle(&g), Some(7));
        let r = min_cost_b_matching(&g).unwrap();
        assert_eq!(r.cost, 7);
        assert_eq!(r.pairs, vec![(0, 0), (1, 1), (1, 2)]);
    }

    #[test]
    fn zero_demand_is_empty() {
        let g = BipartiteDemandGraph::complete(vec![0], &[vec![3]]).unwrap();
        let r = min_cost_b_matching(&g).unwrap();
        assert!(r.pairs.is_empty());
        assert_eq!(r.cost, 0);
    }

    #[test]
    fn supply_deficit_is_infeasible() {
        let g = BipartiteDemandGraph::complete(vec![2], &[vec![3]]).unwrap();
        assert!(matches!(min_cost_b_matching(&g), Err(Error::Infeasible(_))));
        assert!(!b_matching_feasible(&g));
    }

    #[test]
    fn feasibility_cases() {
        let g = BipartiteDemandGraph::complete(vec![1, 2], &[vec![0, 0], vec![0, 0], vec![0, 0]]).unwrap();
        assert!(b_matching_feasible(&g));
        let g = BipartiteDemandGraph::complete(vec![2, 2], &[vec![0, 0], vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!b_matching_feasible(&g));
        let mut g = BipartiteDemandGraph::complete(vec![2], &[vec![1], vec![1]]).unwrap();
        g.forbid(0, 0);
        g.forbid(0, 1);
        assert!(!b_matching_feasible(&g));
        assert!(min_cost_b_matching(&g).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn graph() -> impl Strategy<Value = BipartiteDemandGraph> {
            (1usize..=5, 1usize..=5).prop_flat_map(|(m, n)| {
                (
                    proptest::collection::vec(0usize..=2, m),
                    proptest::collection::vec(proptest::collection::vec(proptest::option::weighted(0.8, 0i64..20), n), m),
                )
                    .prop_map(move |(d, c)| BipartiteDemandGraph::new(d, n, c).unwrap())
            })
        }

        proptest! {
            #[test]
            fn matches_enumeration(g in graph()) {
                let fast = min_cost_b_matching(&g).ok().map(|r| r.cost);
                prop_assert_eq!(fast, oracle(&g));
            }

            #[test]
            fn feasibility_agrees_with_solver(g in graph()) {
                prop_assert_eq!(b_matching_feasible(&g), min_cost_b_matching(&g).is_ok());
            }

            #[test]
            fn witness_is_saturating(g in graph()) {
                if let Ok(r) = min_cost_b_matching(&g) {
                    let mut counts = vec![0; g.demands.len()];
                    let mut used = vec![false; g.robot_count];
                    let mut cost = 0;
                    for &(j, i) in &r.pairs {
                        counts[j] += 1;
                        prop_assert!(!used[i]);
                        used[i] = true;
                        cost += g.costs[j][i].unwrap();
                    }
                    prop_assert_eq!(&counts, &g.demands);
                    prop_assert_eq!(cost, r.cost);
                }
            }

            #[test]
            fn uniform_shift(g in graph(), k in 0i64..10) {
                let shifted = BipartiteDemandGraph::new(
                    g.demands.clone(),
                    g.robot_count,
                    g.costs.iter().map(|row| row.iter().map(|c| c.map(|c| c + k)).collect()).collect(),
                ).unwrap();
                match (min_cost_b_matching(&g), min_cost_b_matching(&shifted)) {
                    (Ok(a), Ok(b)) => {
                        prop_assert_eq!(b.cost, a.cost + k * g.total_demand() as i64);
                        // the original optimum is still optimal after the shift
                        let moved: i64 = a.pairs.iter().map(|&(j, i)| shifted.costs[j][i].unwrap()).sum();
                        prop_assert_eq!(moved, b.cost);
                    }
                    (Err(_), Err(_)) => {}
                    _ => prop_assert!(false, "shift changed feasibility"),
                }
            }
        }
    }
}
