//! Instance generators: seeded random families, location-based costs,
//! knapsack conversions, and constructive hardness reductions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Budget, BudgetKind, Cost, Instance, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocationConfig {
    /// Points are drawn from `[0, width] x [0, height]`.
    pub width: i64,
    pub height: i64,
    pub scale: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub robots: usize,
    pub tasks: usize,
    /// Inclusive cost range.
    pub cost_range: (Cost, Cost),
    /// Requirements are drawn from `1..=q_max`.
    pub q_max: usize,
    pub symmetric: bool,
    pub uniform: bool,
    pub location: Option<LocationConfig>,
}

impl GeneratorConfig {
    pub fn new(seed: u64, robots: usize, tasks: usize) -> Self {
        Self {
            seed,
            robots,
            tasks,
            cost_range: (0, 10),
            q_max: 2,
            symmetric: false,
            uniform: false,
            location: None,
        }
    }

    pub fn check(&self) -> Result<()> {
        let (lo, hi) = self.cost_range;
        if lo < 0 || lo > hi {
            return Err(Error::InvalidInput(format!("bad cost range [{lo}, {hi}]")));
        }
        if self.q_max == 0 {
            return Err(Error::InvalidInput("q_max must be at least 1".into()));
        }
        if let Some(l) = self.location {
            if l.width < 0 || l.height < 0 || l.scale < 0 {
                return Err(Error::InvalidInput("location box and scale must be nonnegative".into()));
            }
            if self.symmetric {
                return Err(Error::InvalidInput("location costs cannot also be forced symmetric".into()));
            }
        }
        Ok(())
    }
}

fn requirements(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Vec<usize> {
    if cfg.uniform {
        let q = rng.random_range(1..=cfg.q_max);
        vec![q; cfg.tasks]
    } else {
        (0..cfg.tasks).map(|_| rng.random_range(1..=cfg.q_max)).collect()
    }
}

/// Seeded random instance honoring the config's flags.
pub fn gen_random(cfg: &GeneratorConfig) -> Result<Instance> {
    cfg.check()?;
    if cfg.location.is_some() {
        return gen_location_based(cfg);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let q = requirements(&mut rng, cfg);
    let (lo, hi) = cfg.cost_range;
    if cfg.symmetric {
        let c = (0..cfg.tasks).map(|_| rng.random_range(lo..=hi)).collect();
        return Instance::symmetric(cfg.robots, q, c);
    }
    let costs = (0..cfg.robots).map(|_| (0..cfg.tasks).map(|_| rng.random_range(lo..=hi)).collect()).collect();
    Instance::new(cfg.robots, q, costs)
}

/// Robots and tasks on integer grid points; costs are scaled rounded distances.
pub fn gen_location_based(cfg: &GeneratorConfig) -> Result<Instance> {
    cfg.check()?;
    let l = cfg.location.ok_or_else(|| Error::InvalidInput("location settings missing".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let q = requirements(&mut rng, cfg);
    let point = |rng: &mut ChaCha8Rng| Point::new(rng.random_range(0..=l.width), rng.random_range(0..=l.height));
    let robots = (0..cfg.robots).map(|_| point(&mut rng)).collect();
    let tasks = (0..cfg.tasks).map(|_| point(&mut rng)).collect();
    Instance::located(q, robots, tasks, l.scale)
}

/// Two-dimensional knapsack with unit profits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoKpInstance {
    pub items: Vec<(u64, u64)>,
    pub capacity: (u64, u64),
}

impl TwoKpInstance {
    /// Largest number of items fitting both capacities, by enumeration.
    pub fn brute_force_optimum(&self) -> usize {
        let k = self.items.len();
        assert!(k <= 20, "enumeration over {k} items");
        let mut best = 0;
        for mask in 0u32..1 << k {
            let (mut a, mut b) = (0u128, 0u128);
            for (j, &(s1, s2)) in self.items.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    a += s1 as u128;
                    b += s2 as u128;
                }
            }
            if a <= self.capacity.0 as u128 && b <= self.capacity.1 as u128 {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }
}

/// Item `j` becomes `(q_j, q_j c_j)` with capacities `(n, W)`.
pub fn to_2kp(inst: &Instance, w: Cost) -> Result<TwoKpInstance> {
    let c = inst
        .symmetric_costs()
        .ok_or_else(|| Error::PreconditionViolated("costs are not symmetric across robots".into()))?;
    if w < 0 {
        return Err(Error::InvalidInput(format!("negative budget {w}")));
    }
    let items = (0..inst.task_count())
        .map(|j| {
            let q = inst.requirement(j) as u64;
            let size = q.checked_mul(c[j] as u64).ok_or_else(|| Error::InvalidInput("item size overflows".into()))?;
            Ok((q, size))
        })
        .collect::<Result<_>>()?;
    Ok(TwoKpInstance { items, capacity: (inst.robot_count() as u64, w as u64) })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Inverse of [`to_2kp`]. When some second size is not a multiple of its
/// first size, the second dimension is scaled by the lcm of the first sizes.
pub fn from_2kp(kp: &TwoKpInstance) -> Result<(Instance, Budget)> {
    let overflow = || Error::InvalidInput("scaled sizes overflow 64 bits".into());
    if let Some(j) = kp.items.iter().position(|&(s1, _)| s1 == 0) {
        return Err(Error::InvalidInput(format!("item {j} has zero first size and no robot requirement")));
    }
    let divisible = kp.items.iter().all(|&(s1, s2)| s2 % s1 == 0);
    let mut scale: u64 = 1;
    if !divisible {
        for &(s1, _) in &kp.items {
            scale = (scale / gcd(scale, s1)).checked_mul(s1).ok_or_else(overflow)?;
        }
    }
    let to_cost = |v: u64| Cost::try_from(v).map_err(|_| overflow());
    let q: Vec<usize> = kp.items.iter().map(|&(s1, _)| s1 as usize).collect();
    let c = kp
        .items
        .iter()
        .map(|&(s1, s2)| to_cost(s2.checked_mul(scale).ok_or_else(overflow)? / s1))
        .collect::<Result<Vec<_>>>()?;
    let w = to_cost(kp.capacity.1.checked_mul(scale).ok_or_else(overflow)?)?;
    let n = usize::try_from(kp.capacity.0).map_err(|_| overflow())?;
    Ok((Instance::symmetric(n, q, c)?, Budget::total(w)))
}

/// Graph on `vertex_count` vertices given as an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &edges {
            if u == v || u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidInput(format!("bad edge ({u}, {v})")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidInput(format!("repeated edge ({u}, {v})")));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    /// Size of a largest independent set, by enumeration.
    pub fn independence_number(&self) -> usize {
        let k = self.vertex_count;
        assert!(k <= 20, "enumeration over {k} vertices");
        (0u32..1 << k)
            .filter(|&mask| self.edges.iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0))
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSetInstance {
    pub instance: Instance,
    pub budget: Budget,
    /// Task handling each vertex; task `v` for vertex `v`.
    pub task_of_vertex: Vec<usize>,
}

/// Each vertex `v` owns `|V|` robots that are free on task `v`; the two robots
/// standing for an edge are merged and free on both endpoints. With budget 0
/// the handled tasks are exactly an independent set.
#[allow(clippy::needless_range_loop)]
pub fn gen_from_independent_set(g: &SimpleGraph) -> Result<IndependentSetInstance> {
    let k = g.vertex_count;
    // owner[i][j] = robot standing for vertex i's slot j
    let mut owner = vec![vec![usize::MAX; k]; k];
    let mut robots: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if owner[i][j] != usize::MAX {
                continue;
            }
            let id = robots.len();
            owner[i][j] = id;
            if i != j && g.adjacent(i, j) {
                owner[j][i] = id;
                robots.push(vec![i, j]);
            } else {
                robots.push(vec![i]);
            }
        }
    }
    let costs = robots
        .iter()
        .map(|free_on| (0..k).map(|t| if free_on.contains(&t) { 0 } else { 1 }).collect())
        .collect();
    let instance = Instance::new(robots.len(), vec![k; k], costs)?;
    Ok(IndependentSetInstance { instance, budget: Budget::total(0), task_of_vertex: (0..k).collect() })
}

/// `k = |S| / 3` tasks of requirement 3; robot `i` costs `s_i` on every task;
/// per-task budget `T = sum(S) / k`.
pub fn gen_from_3partition(values: &[u64]) -> Result<(Instance, Budget)> {
    if values.is_empty() || !values.len().is_multiple_of(3) {
        return Err(Error::InvalidInput(format!("{} values is not a positive multiple of 3", values.len())));
    }
    if values.contains(&0) {
        return Err(Error::InvalidInput("values must be positive".into()));
    }
    let k = values.len() / 3;
    let sum: u64 = values.iter().sum();
    if !sum.is_multiple_of(k as u64) {
        return Err(Error::InvalidInput(format!("sum {sum} is not divisible by {k}")));
    }
    let to_cost = |v: u64| Cost::try_from(v).map_err(|_| Error::InvalidInput(format!("{v} exceeds cost range")));
    let costs = values.iter().map(|&s| Ok(vec![to_cost(s)?; k])).collect::<Result<_>>()?;
    let inst = Instance::new(values.len(), vec![3; k], costs)?;
    Ok((inst, Budget::per_task(to_cost(sum / k as u64)?)))
}

/// Whether `values` splits into triples of equal sum.
pub fn has_3partition(values: &[u64]) -> bool {
    if values.is_empty() || !values.len().is_multiple_of(3) {
        return false;
    }
    let k = values.len() / 3;
    let sum: u64 = values.iter().sum();
    if !sum.is_multiple_of(k as u64) {
        return false;
    }
    fn go(values: &[u64], used: &mut [bool], target: u64) -> bool {
        let Some(a) = used.iter().position(|&u| !u) else { return true };
        used[a] = true;
        for b in a + 1..values.len() {
            if used[b] {
                continue;
            }
            used[b] = true;
            for c in b + 1..values.len() {
                if !used[c] && values[a] + values[b] + values[c] == target {
                    used[c] = true;
                    if go(values, used, target) {
                        return true;
                    }
                    used[c] = false;
                }
            }
            used[b] = false;
        }
        used[a] = false;
        false
    }
    go(values, &mut vec![false; values.len()], sum / k as u64)
}

/// Adjacent pairs cost 1, others `3m + 1`; every task needs 3 robots. The
/// budget is `3m` total, 3 per task or 1 per robot.
pub fn gen_bitcost(adjacency: &[Vec<bool>], tasks: usize, kind: BudgetKind) -> Result<(Instance, Budget)> {
    if adjacency.iter().any(|row| row.len() != tasks) {
        return Err(Error::DimensionMismatch(format!("adjacency rows must have {tasks} entries")));
    }
    let big = 3 * tasks as Cost + 1;
    let costs = adjacency.iter().map(|row| row.iter().map(|&a| if a { 1 } else { big }).collect()).collect();
    let inst = Instance::new(adjacency.len(), vec![3; tasks], costs)?;
    let budget = match kind {
        BudgetKind::Total => Budget::total(3 * tasks as Cost),
        BudgetKind::PerTask => Budget::per_task(3),
        BudgetKind::PerRobot => Budget::per_robot(1),
    };
    Ok((inst, budget))
}

/// Seeded random bipartite adjacency for [`gen_bitcost`].
pub fn random_adjacency(seed: u64, robots: usize, tasks: usize, density: f64) -> Vec<Vec<bool>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..robots).map(|_| (0..tasks).map(|_| rng.random_bool(density.clamp(0.0, 1.0))).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{brute_force, exact_task_budget, exact_total_budget};
    use crate::model::validate_instance;

    #[test]
    fn random_is_deterministic() {
        let cfg = GeneratorConfig::new(1, 4, 3);
        assert_eq!(gen_random(&cfg).unwrap(), gen_random(&cfg).unwrap());
        let other = GeneratorConfig { seed: 2, ..cfg.clone() };
        assert_ne!(gen_random(&cfg).unwrap(), gen_random(&other).unwrap());
    }

    #[test]
    fn random_flags() {
        let cfg = GeneratorConfig { symmetric: true, ..GeneratorConfig::new(1, 4, 3) };
        let inst = gen_random(&cfg).unwrap();
        assert!(inst.is_symmetric());
        let cfg = GeneratorConfig { q_max: 1, ..GeneratorConfig::new(5, 4, 6) };
        assert!(gen_random(&cfg).unwrap().requirements.iter().all(|&q| q == 1));
        let cfg = GeneratorConfig { uniform: true, q_max: 3, ..GeneratorConfig::new(7, 6, 5) };
        assert!(gen_random(&cfg).unwrap().is_uniform());
    }

    #[test]
    fn random_rejects_bad_ranges() {
        let bad = GeneratorConfig { cost_range: (5, 1), ..GeneratorConfig::new(1, 2, 2) };
        assert!(gen_random(&bad).is_err());
        let bad = GeneratorConfig { cost_range: (-1, 1), ..GeneratorConfig::new(1, 2, 2) };
        assert!(gen_random(&bad).is_err());
        let bad = GeneratorConfig { q_max: 0, ..GeneratorConfig::new(1, 2, 2) };
        assert!(gen_random(&bad).is_err());
    }

    #[test]
    fn location_based() {
        let inst = Instance::located(vec![1], vec![Point::new(0, 0), Point::new(3, 4)], vec![Point::new(3, 4)], 1)
            .unwrap();
        assert_eq!(inst.cost(0, 0), 5);
        assert_eq!(inst.cost(1, 0), 0);
        let cfg = GeneratorConfig {
            location: Some(LocationConfig { width: 20, height: 10, scale: 3 }),
            ..GeneratorConfig::new(9, 5, 4)
        };
        let inst = gen_location_based(&cfg).unwrap();
        assert!(inst.structure.locations.is_some());
        assert!(validate_instance(&inst).is_empty());
        assert_eq!(inst, gen_random(&cfg).unwrap());
    }

    #[test]
    fn two_kp_example1() {
        let inst = Instance::symmetric(4, vec![1, 2, 2], vec![100, 1, 1]).unwrap();
        let kp = to_2kp(&inst, 100).unwrap();
        assert_eq!(kp.items, vec![(1, 100), (2, 2), (2, 2)]);
        assert_eq!(kp.capacity, (4, 100));
        let (back, b) = from_2kp(&kp).unwrap();
        assert_eq!(back, inst);
        assert_eq!(b, Budget::total(100));
        assert_eq!(kp.brute_force_optimum(), 2);
    }

    #[test]
    fn two_kp_scaling() {
        let kp = TwoKpInstance { items: vec![(2, 3), (3, 3), (1, 1)], capacity: (4, 5) };
        let (inst, b) = from_2kp(&kp).unwrap();
        // lcm 6: c = (9, 6, 6), W = 30
        assert_eq!(inst.symmetric_costs(), Some(&[9, 6, 6][..]));
        assert_eq!(b, Budget::total(30));
        assert_eq!(exact_total_budget(&inst, b.value).handled_count, kp.brute_force_optimum());
    }

    #[test]
    fn two_kp_edges() {
        let empty = TwoKpInstance { items: vec![], capacity: (3, 7) };
        let (inst, _) = from_2kp(&empty).unwrap();
        assert_eq!(inst.task_count(), 0);
        for item in [(0, 4), (0, 0)] {
            let kp = TwoKpInstance { items: vec![item], capacity: (3, 7) };
            assert!(matches!(from_2kp(&kp), Err(Error::InvalidInput(_))));
        }
        let asym = Instance::new(2, vec![1], vec![vec![1], vec![2]]).unwrap();
        assert!(matches!(to_2kp(&asym, 3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn independent_set_path_and_triangle() {
        let path = SimpleGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let g = gen_from_independent_set(&path).unwrap();
        assert_eq!(g.instance.robot_count(), 7);
        assert_eq!(g.instance.requirements, vec![3, 3, 3]);
        assert_eq!(exact_total_budget(&g.instance, 0).handled_count, 2);
        assert_eq!(path.independence_number(), 2);

        let empty = SimpleGraph::new(2, vec![]).unwrap();
        let g = gen_from_independent_set(&empty).unwrap();
        assert_eq!(g.instance.robot_count(), 4);
        assert_eq!(exact_total_budget(&g.instance, 0).handled_count, 2);

        let tri = SimpleGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let g = gen_from_independent_set(&tri).unwrap();
        assert_eq!(g.instance.robot_count(), 6);
        assert_eq!(exact_total_budget(&g.instance, 0).handled_count, 1);
    }

    #[test]
    fn graph_validation() {
        assert!(SimpleGraph::new(2, vec![(0, 0)]).is_err());
        assert!(SimpleGraph::new(2, vec![(0, 2)]).is_err());
        assert!(SimpleGraph::new(2, vec![(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn three_partition() {
        let (inst, b) = gen_from_3partition(&[1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!((inst.robot_count(), inst.task_count()), (6, 2));
        assert_eq!(b, Budget::per_task(3));
        assert_eq!(exact_task_budget(&inst, 3).handled_count, 2);

        let yes = [1, 1, 4, 1, 1, 4];
        let (inst, b) = gen_from_3partition(&yes).unwrap();
        assert_eq!(b.value, 6);
        assert!(has_3partition(&yes));
        assert_eq!(exact_task_budget(&inst, 6).handled_count, 2);

        let no = [1, 1, 1, 1, 1, 7];
        let (inst, b) = gen_from_3partition(&no).unwrap();
        assert!(!has_3partition(&no));
        assert!(exact_task_budget(&inst, b.value).handled_count < 2);
        assert_eq!(brute_force(&inst, b).unwrap().handled_count, 1);

        assert!(gen_from_3partition(&[1, 2]).is_err());
        assert!(gen_from_3partition(&[1, 1, 1, 1, 1, 2]).is_err());
    }

    #[test]
    fn bitcost() {
        let (inst, b) = gen_bitcost(&[vec![true], vec![true], vec![true]], 1, BudgetKind::PerRobot).unwrap();
        assert_eq!(b, Budget::per_robot(1));
        assert_eq!(brute_force(&inst, b).unwrap().handled_count, 1);
        for kind in BudgetKind::ALL {
            let (inst, b) = gen_bitcost(&vec![vec![false; 2]; 6], 2, kind).unwrap();
            assert_eq!(inst.cost(0, 0), 7);
            assert_eq!(brute_force(&inst, b).unwrap().handled_count, 0);
        }
    }
}
