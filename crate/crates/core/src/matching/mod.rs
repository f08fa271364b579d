//! Graph primitives: min-cost bipartite b-matching, b-matching feasibility via
//! max-flow, and min-weight perfect matching in general graphs.

mod bipartite;
pub mod blossom;
mod flow;

use std::collections::BTreeMap;

pub use bipartite::{b_matching_feasible, min_cost_b_matching, BMatching, BipartiteDemandGraph};

use crate::error::{Error, Result};

/// Undirected graph with integer edge weights. Parallel edges collapse to the
/// lighter one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneralWeightedGraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectMatching {
    /// Partner of each vertex.
    pub mate: Vec<usize>,
    pub weight: i64,
}

impl PerfectMatching {
    /// Matched edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate.iter().enumerate().filter(|&(u, &v)| u < v).map(|(u, &v)| (u, v)).collect()
    }
}

impl GeneralWeightedGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self { vertex_count, edges: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: i64) -> Result<()> {
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
        }
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::DimensionMismatch(format!("edge ({u}, {v}) outside {} vertices", self.vertex_count)));
        }
        let key = (u.min(v), u.max(v));
        self.edges.entry(key).and_modify(|w| *w = (*w).min(weight)).or_insert(weight);
        Ok(())
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<i64> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Perfect matching of minimum total weight.
///
/// Weights are flipped to `K - w` with `K` above every weight and handed to
/// the max-cardinality blossom solver; among perfect matchings, maximizing
/// `sum(K - w)` minimizes `sum(w)`.
pub fn min_weight_perfect_matching(g: &GeneralWeightedGraph) -> Result<PerfectMatching> {
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Err(Error::Infeasible(format!("odd vertex count {n}")));
    }
    if n == 0 {
        return Ok(PerfectMatching { mate: Vec::new(), weight: 0 });
    }
    let top = g.edges().map(|e| e.2).max().unwrap_or(0);
    let flipped: Vec<(usize, usize, i64)> = g.edges().map(|(u, v, w)| (u, v, top + 1 - w)).collect();
    let mate = blossom::max_weight_matching(n, &flipped, true);
    let mate: Vec<usize> = mate
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Infeasible("graph has no perfect matching".into()))?;
    let weight = mate
        .iter()
        .enumerate()
        .filter(|&(u, &v)| u < v)
        .map(|(u, &v)| g.weight(u, v).expect("matched pair is an edge"))
        .sum();
    Ok(PerfectMatching { mate, weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Minimum over all perfect matchings by recursive pairing of the lowest free vertex.
    fn brute_force(g: &GeneralWeightedGraph) -> Option<i64> {
        fn go(g: &GeneralWeightedGraph, used: &mut Vec<bool>) -> Option<i64> {
            let Some(u) = used.iter().position(|&x| !x) else { return Some(0) };
            used[u] = true;
            let mut best: Option<i64> = None;
            for v in u + 1..used.len() {
                if used[v] {
                    continue;
                }
                if let Some(w) = g.weight(u, v) {
                    used[v] = true;
                    if let Some(rest) = go(g, used) {
                        best = Some(best.map_or(w + rest, |b| b.min(w + rest)));
                    }
                    used[v] = false;
                }
            }
            used[u] = false;
            best
        }
        go(g, &mut vec![false; g.vertex_count()])
    }

    #[test]
    fn triangle_plus_pendant() {
        // path a-b-c-d weights 1,1,1 and chord a-c weight 5
        let mut g = GeneralWeightedGraph::new(4);
        g.add_edge(0, 1, 1).unwrap();
        g.add_edge(1, 2, 1).unwrap();
        g.add_edge(2, 3, 1).unwrap();
        g.add_edge(0, 2, 5).unwrap();
        assert_eq!(brute_force(&g), Some(2));
        let pm = min_weight_perfect_matching(&g).unwrap();
        assert_eq!(pm.weight, 2);
        assert_eq!(pm.edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn forced_single_edge() {
        let mut g = GeneralWeightedGraph::new(2);
        g.add_edge(0, 1, 7).unwrap();
        let pm = min_weight_perfect_matching(&g).unwrap();
        assert_eq!((pm.weight, pm.edges()), (7, vec![(0, 1)]));
    }

    #[test]
    fn odd_vertex_count_is_infeasible() {
        let mut g = GeneralWeightedGraph::new(3);
        g.add_edge(0, 1, 1).unwrap();
        assert!(matches!(min_weight_perfect_matching(&g), Err(Error::Infeasible(_))));
    }

    #[test]
    fn star_has_no_perfect_matching() {
        let mut g = GeneralWeightedGraph::new(4);
        for v in 1..4 {
            g.add_edge(0, v, 1).unwrap();
        }
        assert!(min_weight_perfect_matching(&g).is_err());
    }

    #[test]
    fn parallel_edges_keep_minimum_and_loops_rejected() {
        let mut g = GeneralWeightedGraph::new(2);
        g.add_edge(0, 1, 9).unwrap();
        g.add_edge(1, 0, 4).unwrap();
        assert_eq!(g.weight(0, 1), Some(4));
        assert!(g.add_edge(1, 1, 0).is_err());
    }

    fn graph(max_n: usize) -> impl Strategy<Value = GeneralWeightedGraph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(proptest::option::weighted(0.6, -20i64..30), pairs).prop_map(move |ws| {
                let mut g = GeneralWeightedGraph::new(n);
                let mut it = ws.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if let Some(Some(w)) = it.next() {
                            g.add_edge(u, v, w).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn blossom_matches_brute_force(g in graph(10)) {
            let fast = min_weight_perfect_matching(&g).ok();
            prop_assert_eq!(fast.as_ref().map(|p| p.weight), brute_force(&g));
            if let Some(p) = fast {
                for (u, v) in p.edges() {
                    prop_assert_eq!(p.mate[v], u);
                    prop_assert!(g.weight(u, v).is_some());
                }
            }
        }

        #[test]
        fn max_weight_mode_matches_brute_force(g in graph(8)) {
            // plain max-weight matching, checked by enumerating all matchings
            fn best(g: &GeneralWeightedGraph, used: &mut Vec<bool>, from: usize) -> i64 {
                let Some(u) = (from..used.len()).find(|&u| !used[u]) else { return 0 };
                used[u] = true;
                let mut b = best(g, used, u + 1);
                for v in u + 1..used.len() {
                    if !used[v] {
                        if let Some(w) = g.weight(u, v) {
                            used[v] = true;
                            b = b.max(w + best(g, used, u + 1));
                            used[v] = false;
                        }
                    }
                }
                used[u] = false;
                b
            }
            let edges: Vec<_> = g.edges().collect();
            let mate = blossom::max_weight_matching(g.vertex_count(), &edges, false);
            let w: i64 = edges.iter().filter(|&&(u, v, _)| mate[u] == Some(v)).map(|e| e.2).sum();
            prop_assert_eq!(w, best(&g, &mut vec![false; g.vertex_count()], 0));
        }
    }
}
