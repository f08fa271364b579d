//! Cross-solver invariant checks on freshly generated instances.

use std::fmt::Write;

use mrta_core::approx::{
    greedy, greedy_total, ptas_symmetric_total, set_packing_local_search, Epsilon, DEFAULT_SWAP_DEPTH,
};
use mrta_core::exact::{brute_force, exact_task_budget, exact_total_budget, solve_exact};
use mrta_core::instances::{
    from_2kp, gen_bitcost, gen_from_3partition, gen_from_independent_set, gen_random, has_3partition,
    random_adjacency, GeneratorConfig, SimpleGraph, TwoKpInstance,
};
use mrta_core::polycases::{
    k_cost_curve, min_cost_handle_all, solve_q2, solve_symmetric_robot, solve_symmetric_task,
    solve_symmetric_uniform_total,
};
use mrta_core::{is_feasible, Budget, BudgetKind, Cost, Instance, SolveReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bench::scaled_budget;
use crate::format::serialize_instance;

pub const FAMILIES: &[&str] = &[
    "exact",
    "symmetric",
    "q2",
    "handle-all",
    "greedy",
    "set-packing",
    "ptas",
    "is-reduction",
    "3partition",
    "2kp",
    "bitcost",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    /// Greedy that never checks the total budget.
    GreedyNoBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub eps: Epsilon,
    pub mutant: Option<Mutant>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub family: String,
    pub trial: usize,
    pub reason: String,
    pub instance: Instance,
    pub budget: Budget,
}

impl Failure {
    pub fn report(&self) -> String {
        format!(
            "FAIL {} trial {}: {}\n{}",
            self.family,
            self.trial,
            self.reason,
            serialize_instance(&self.instance, self.budget)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub family: String,
    pub trials: usize,
    pub failure: Option<Failure>,
}

type Check = Result<(), String>;

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok { Ok(()) } else { Err(msg()) }
}

fn expect_feasible(inst: &Instance, b: Budget, r: &SolveReport) -> Check {
    expect(is_feasible(inst, b, &r.assignment), || format!("{} witness violates the {} budget", r.solver, b.kind))
}

fn small_instance(rng: &mut ChaCha8Rng, q_max: usize, symmetric: bool, uniform: bool) -> Instance {
    let cfg = GeneratorConfig {
        seed: rng.random(),
        robots: rng.random_range(1..=7),
        tasks: rng.random_range(0..=5),
        cost_range: (0, 9),
        q_max,
        symmetric,
        uniform,
        location: None,
    };
    gen_random(&cfg).expect("valid generator config")
}

fn random_budget(rng: &mut ChaCha8Rng, inst: &Instance, kind: BudgetKind) -> Budget {
    Budget::new(kind, scaled_budget(inst, kind, rng.random_range(0..=100)))
}

struct Trial {
    instance: Instance,
    budget: Budget,
    check: Check,
}

fn trial(family: &str, rng: &mut ChaCha8Rng, opts: &VerifyOptions) -> Trial {
    match family {
        "exact" => {
            let inst = small_instance(rng, 3, false, false);
            let kind = BudgetKind::ALL[rng.random_range(0..3)];
            let b = random_budget(rng, &inst, kind);
            let check = (|| {
                let oracle = brute_force(&inst, b).map_err(|e| e.to_string())?.handled_count;
                let r = solve_exact(&inst, b);
                expect(r.handled_count == oracle, || format!("{} = {} but enumeration = {oracle}", r.solver, r.handled_count))?;
                expect_feasible(&inst, b, &r)
            })();
            Trial { instance: inst, budget: b, check }
        }
        "symmetric" => {
            let uniform = rng.random_bool(0.5);
            let inst = small_instance(rng, 3, true, uniform);
            let kind = if uniform { BudgetKind::Total } else { BudgetKind::ALL[rng.random_range(1..3)] };
            let b = random_budget(rng, &inst, kind);
            let check = (|| {
                let r = match kind {
                    BudgetKind::Total => solve_symmetric_uniform_total(&inst, b.value),
                    BudgetKind::PerTask => solve_symmetric_task(&inst, b.value),
                    BudgetKind::PerRobot => solve_symmetric_robot(&inst, b.value),
                }
                .map_err(|e| e.to_string())?;
                let oracle = brute_force(&inst, b).map_err(|e| e.to_string())?.handled_count;
                expect(r.handled_count == oracle, || format!("{} = {} but enumeration = {oracle}", r.solver, r.handled_count))?;
                expect_feasible(&inst, b, &r)
            })();
            Trial { instance: inst, budget: b, check }
        }
        "q2" => {
            let inst = small_instance(rng, 2, false, false);
            let kind = if rng.random_bool(0.5) { BudgetKind::Total } else { BudgetKind::PerRobot };
            let b = random_budget(rng, &inst, kind);
            let check = (|| {
                let r = solve_q2(&inst, kind, b.value).map_err(|e| e.to_string())?;
                let oracle = brute_force(&inst, b).map_err(|e| e.to_string())?.handled_count;
                expect(r.handled_count == oracle, || format!("q2 = {} but enumeration = {oracle}", r.handled_count))?;
                expect_feasible(&inst, b, &r)?;
                let curve = k_cost_curve(&inst).map_err(|e| e.to_string())?;
                expect(curve.is_monotone(), || "cost curve decreases".into())
            })();
            Trial { instance: inst, budget: b, check }
        }
        "handle-all" => {
            let inst = small_instance(rng, 3, false, false);
            let b = Budget::total(0);
            let check = (|| match min_cost_handle_all(&inst) {
                Ok((cost, _)) => {
                    let b = Budget::total(cost);
                    let m = inst.task_count();
                    let at = exact_total_budget(&inst, cost).handled_count;
                    expect(at == m, || format!("exact handles {at} of {m} at cost {cost}"))?;
                    let below = if cost > 0 { exact_total_budget(&inst, cost - 1).handled_count } else { 0 };
                    expect(cost == 0 || below < m, || format!("all tasks fit below {cost}"))?;
                    let bf = brute_force(&inst, b).map_err(|e| e.to_string())?.handled_count;
                    expect(bf == m, || format!("enumeration handles {bf} of {m} at cost {cost}"))
                }
                Err(_) => expect(inst.total_requirement() > inst.robot_count(), || "handle-all infeasible".into()),
            })();
            Trial { instance: inst, budget: b, check }
        }
        "greedy" => {
            let inst = small_instance(rng, 3, false, false);
            let kind = match opts.mutant {
                Some(Mutant::GreedyNoBudget) => BudgetKind::Total,
                None => BudgetKind::ALL[rng.random_range(0..3)],
            };
            let b = random_budget(rng, &inst, kind);
            let check = (|| {
                let r = match opts.mutant {
                    Some(Mutant::GreedyNoBudget) => greedy_total(&inst, Cost::MAX),
                    None => greedy(&inst, b),
                };
                expect_feasible(&inst, b, &r)?;
                let exact = brute_force(&inst, b).map_err(|e| e.to_string())?.handled_count;
                let bound = (inst.q_star() + 1) * r.handled_count;
                expect(bound >= exact, || format!("(q*+1) * {} < optimum {exact}", r.handled_count))
            })();
            Trial { instance: inst, budget: b, check }
        }
        "set-packing" => {
            let inst = small_instance(rng, 3, false, false);
            let kind = BudgetKind::ALL[rng.random_range(1..3)];
            let b = random_budget(rng, &inst, kind);
            let check = (|| {
                let r = set_packing_local_search(&inst, kind, b.value, DEFAULT_SWAP_DEPTH).map_err(|e| e.to_string())?;
                expect_feasible(&inst, b, &r)?;
                let exact = brute_force(&inst, b).map_err(|e| e.to_string())?.handled_count;
                let factor = (inst.q_star() + 1).div_ceil(2);
                expect(factor * r.handled_count >= exact, || format!("{factor} * {} < optimum {exact}", r.handled_count))
            })();
            Trial { instance: inst, budget: b, check }
        }
        "ptas" => {
            let inst = small_instance(rng, 3, true, false);
            let b = random_budget(rng, &inst, BudgetKind::Total);
            let check = (|| {
                let r = ptas_symmetric_total(&inst, b.value, opts.eps).map_err(|e| e.to_string())?;
                expect_feasible(&inst, b, &r)?;
                let exact = exact_total_budget(&inst, b.value).handled_count as u64;
                let (num, den) = (opts.eps.numer() as u64, opts.eps.denom() as u64);
                let need = (exact * (den - num)).div_ceil(den) as usize;
                expect(r.handled_count >= need, || format!("ptas {} < {need} needed from optimum {exact}", r.handled_count))
            })();
            Trial { instance: inst, budget: b, check }
        }
        "is-reduction" => {
            let v = rng.random_range(1..=5);
            let edges = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).filter(|_| rng.random_bool(0.5)).collect();
            let g = SimpleGraph::new(v, edges).expect("simple graph");
            let red = gen_from_independent_set(&g).expect("reduction builds");
            let alpha = g.independence_number();
            let got = exact_total_budget(&red.instance, red.budget.value).handled_count;
            let check = expect(got == alpha, || format!("handled {got} but independence number {alpha}"));
            Trial { instance: red.instance, budget: red.budget, check }
        }
        "3partition" => loop {
            let k = rng.random_range(1..=3);
            let s: Vec<u64> = (0..3 * k).map(|_| rng.random_range(1..=6)).collect();
            let Ok((inst, b)) = gen_from_3partition(&s) else { continue };
            let got = exact_task_budget(&inst, b.value).handled_count;
            let exists = has_3partition(&s);
            let check = expect((got == k) == exists, || format!("handled {got} of {k}, partition exists: {exists}"));
            break Trial { instance: inst, budget: b, check };
        },
        "2kp" => {
            let items = (0..rng.random_range(0..=10)).map(|_| (rng.random_range(1..=4), rng.random_range(0..=12))).collect();
            let kp = TwoKpInstance { items, capacity: (rng.random_range(1..=12), rng.random_range(0..=40)) };
            let (inst, b) = from_2kp(&kp).expect("positive first sizes");
            let got = exact_total_budget(&inst, b.value).handled_count;
            let want = kp.brute_force_optimum();
            let check = expect(got == want, || format!("handled {got} but knapsack optimum {want}"));
            Trial { instance: inst, budget: b, check }
        }
        "bitcost" => {
            let (n, m) = (rng.random_range(1..=8), rng.random_range(1..=3));
            let adj = random_adjacency(rng.random(), n, m, 0.6);
            let results: Vec<(Instance, Budget, usize)> = BudgetKind::ALL
                .iter()
                .map(|&kind| {
                    let (inst, b) = gen_bitcost(&adj, m, kind).expect("bitcost builds");
                    let c = brute_force(&inst, b).map(|r| r.handled_count).unwrap_or(usize::MAX);
                    (inst, b, c)
                })
                .collect();
            let counts: Vec<usize> = results.iter().map(|r| r.2).collect();
            let check = expect(counts.windows(2).all(|w| w[0] == w[1]), || format!("counts differ by kind: {counts:?}"));
            let (inst, b, _) = results.into_iter().next().expect("three kinds");
            Trial { instance: inst, budget: b, check }
        }
        other => unreachable!("unknown family {other}"),
    }
}

/// Runs `opts.trials` trials of `family`, stopping at the first failure.
pub fn verify_family(family: &str, opts: &VerifyOptions) -> VerifySummary {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for t in 0..opts.trials {
        let Trial { instance, budget, check } = trial(family, &mut rng, opts);
        if let Err(reason) = check {
            let failure = Failure { family: family.into(), trial: t + 1, reason, instance, budget };
            return VerifySummary { family: family.into(), trials: t + 1, failure: Some(failure) };
        }
    }
    VerifySummary { family: family.into(), trials: opts.trials, failure: None }
}

pub fn summary_text(summaries: &[VerifySummary]) -> String {
    let mut out = String::new();
    for s in summaries {
        match &s.failure {
            None => {
                let _ = writeln!(out, "{}: {} trials, ok", s.family, s.trials);
            }
            Some(f) => {
                out.push_str(&f.report());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(trials: usize) -> VerifyOptions {
        VerifyOptions { seed: 11, trials, eps: Epsilon::new(1, 4).unwrap(), mutant: None }
    }

    #[test]
    fn every_family_passes() {
        for f in FAMILIES {
            let s = verify_family(f, &opts(40));
            assert!(s.failure.is_none(), "{}", s.failure.unwrap().report());
        }
    }

    #[test]
    fn mutant_greedy_is_caught() {
        let o = VerifyOptions { mutant: Some(Mutant::GreedyNoBudget), ..opts(200) };
        let s = verify_family("greedy", &o);
        let f = s.failure.expect("mutant survives");
        assert!(f.reason.contains("violates the total budget"));
        let text = f.report();
        let body = text.split_once('\n').unwrap().1;
        let (inst, b) = crate::format::parse_instance(body).unwrap();
        assert_eq!((inst, b), (f.instance, f.budget));
    }
}
