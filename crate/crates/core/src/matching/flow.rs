//! Residual network shared by the b-matching routines.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::model::Cost;

const INF: Cost = Cost::MAX / 4;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
    cost: Cost,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
}

/// Handle to a forward arc, for reading its flow after a solve.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ArcId {
    from: usize,
    idx: usize,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self { adj: vec![Vec::new(); nodes] }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: Cost) -> ArcId {
        let idx = self.adj[from].len();
        let rev = self.adj[to].len() + usize::from(from == to);
        self.adj[from].push(Arc { to, rev, cap, cost });
        self.adj[to].push(Arc { to: from, rev: idx, cap: 0, cost: -cost });
        ArcId { from, idx }
    }

    /// Flow currently routed through a forward arc.
    pub fn flow(&self, id: ArcId) -> i64 {
        let a = &self.adj[id.from][id.idx];
        self.adj[a.to][a.rev].cap
    }

    /// Edmonds-Karp; stops once `limit` units are routed.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        while total < limit {
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for (k, a) in self.adj[u].iter().enumerate() {
                    if a.cap > 0 && !seen[a.to] {
                        seen[a.to] = true;
                        prev[a.to] = Some((u, k));
                        queue.push_back(a.to);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut push = limit - total;
            let mut v = t;
            while let Some((u, k)) = prev[v] {
                push = push.min(self.adj[u][k].cap);
                v = u;
            }
            self.augment(&prev, t, push);
            total += push;
        }
        total
    }

    fn augment(&mut self, prev: &[Option<(usize, usize)>], t: usize, push: i64) {
        let mut v = t;
        while let Some((u, k)) = prev[v] {
            let rev = self.adj[u][k].rev;
            self.adj[u][k].cap -= push;
            self.adj[v][rev].cap += push;
            v = u;
        }
    }

    /// Bellman-Ford distances over arcs with residual capacity. Returns `None`
    /// on a negative cycle.
    fn bellman_ford(&self, s: usize) -> Option<Vec<Cost>> {
        let n = self.adj.len();
        let mut dist = vec![INF; n];
        dist[s] = 0;
        for round in 0..n {
            let mut changed = false;
            for u in 0..n {
                if dist[u] == INF {
                    continue;
                }
                for a in &self.adj[u] {
                    if a.cap > 0 && dist[u] + a.cost < dist[a.to] {
                        dist[a.to] = dist[u] + a.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Some(dist);
            }
            if round + 1 == n {
                return None;
            }
        }
        Some(dist)
    }

    /// Successive shortest paths: Bellman-Ford for the initial potentials, then
    /// Dijkstra on reduced costs. Routes exactly `target` units or returns `None`.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, target: i64) -> Option<Cost> {
        let n = self.adj.len();
        if target == 0 {
            return Some(0);
        }
        let mut potential = self.bellman_ford(s)?;
        for p in potential.iter_mut() {
            if *p == INF {
                *p = 0;
            }
        }
        let mut routed = 0;
        let mut cost: Cost = 0;
        while routed < target {
            let mut dist = vec![INF; n];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
            dist[s] = 0;
            let mut heap = BinaryHeap::from([Reverse((0 as Cost, s))]);
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for (k, a) in self.adj[u].iter().enumerate() {
                    if a.cap <= 0 {
                        continue;
                    }
                    let reduced = a.cost + potential[u] - potential[a.to];
                    debug_assert!(reduced >= 0, "negative reduced cost");
                    let nd = d + reduced;
                    if nd < dist[a.to] {
                        dist[a.to] = nd;
                        prev[a.to] = Some((u, k));
                        heap.push(Reverse((nd, a.to)));
                    }
                }
            }
            if dist[t] == INF {
                return None;
            }
            for v in 0..n {
                if dist[v] < INF {
                    potential[v] += dist[v];
                }
            }
            let mut push = target - routed;
            let mut v = t;
            while let Some((u, k)) = prev[v] {
                push = push.min(self.adj[u][k].cap);
                v = u;
            }
            let mut v = t;
            while let Some((u, k)) = prev[v] {
                cost += push * self.adj[u][k].cost;
                v = u;
            }
            self.augment(&prev, t, push);
            routed += push;
        }
        Some(cost)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_flow_diamond() {
        let mut g = FlowNetwork::new(4);
        g.add_arc(0, 1, 2, 0);
        g.add_arc(0, 2, 1, 0);
        g.add_arc(1, 3, 1, 0);
        g.add_arc(2, 3, 2, 0);
        g.add_arc(1, 2, 1, 0);
        assert_eq!(g.max_flow(0, 3, i64::MAX), 3);
    }

    #[test]
    fn min_cost_flow_prefers_cheap_route() {
        let mut g = FlowNetwork::new(4);
        let a = g.add_arc(0, 1, 1, 1);
        g.add_arc(0, 2, 1, 5);
        g.add_arc(1, 3, 1, 1);
        g.add_arc(2, 3, 1, 1);
        assert_eq!(g.min_cost_flow(0, 3, 1), Some(2));
        assert_eq!(g.flow(a), 1);
        assert_eq!(g.min_cost_flow(0, 3, 1), Some(6));
        assert_eq!(g.min_cost_flow(0, 3, 1), None);
    }
}
