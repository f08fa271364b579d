#![allow(dead_code)]

use mrta_core::{evaluate, Assignment, Cost, Instance};
use proptest::prelude::*;

/// Matrix instance with `n <= max_n`, `m <= max_m`, `q_j <= max_q`, costs in `0..=max_c`.
pub fn matrix_instance(max_n: usize, max_m: usize, max_q: usize, max_c: Cost) -> impl Strategy<Value = Instance> {
    (1..=max_n, 0..=max_m).prop_flat_map(move |(n, m)| {
        (prop::collection::vec(1..=max_q, m), prop::collection::vec(prop::collection::vec(0..=max_c, m), n))
            .prop_map(move |(q, c)| Instance::new(n, q, c).unwrap())
    })
}

pub fn symmetric_instance(max_n: usize, max_m: usize, max_q: usize, max_c: Cost) -> impl Strategy<Value = Instance> {
    (1..=max_n, 0..=max_m).prop_flat_map(move |(n, m)| {
        (prop::collection::vec(1..=max_q, m), prop::collection::vec(0..=max_c, m))
            .prop_map(move |(q, c)| Instance::symmetric(n, q, c).unwrap())
    })
}

pub fn uniform_symmetric_instance(max_n: usize, max_m: usize, max_q: usize, max_c: Cost) -> impl Strategy<Value = Instance> {
    (1..=max_n, 0..=max_m, 1..=max_q).prop_flat_map(move |(n, m, q)| {
        prop::collection::vec(0..=max_c, m).prop_map(move |c| Instance::symmetric(n, vec![q; m], c).unwrap())
    })
}

/// Visits every map from robots to tasks or idle.
pub fn for_each_assignment(inst: &Instance, mut f: impl FnMut(&Assignment)) {
    let n = inst.robot_count();
    let m = inst.task_count();
    let mut digits = vec![0usize; n];
    loop {
        let a = Assignment::from_vec(digits.iter().map(|&d| if d == m { None } else { Some(d) }).collect());
        f(&a);
        let mut i = 0;
        while i < n && digits[i] == m {
            digits[i] = 0;
            i += 1;
        }
        if i == n {
            return;
        }
        digits[i] += 1;
    }
}

/// Minimum total cost among assignments handling exactly `k` tasks, for each `k`.
pub fn min_cost_by_handled(inst: &Instance) -> Vec<Option<Cost>> {
    let mut best = vec![None; inst.task_count() + 1];
    for_each_assignment(inst, |a| {
        let e = evaluate(inst, a).unwrap();
        let slot: &mut Option<Cost> = &mut best[e.handled_count];
        if slot.is_none_or(|c| e.total_cost < c) {
            *slot = Some(e.total_cost);
        }
    });
    best
}

pub fn budget_for(inst: &Instance, pick: u32) -> Cost {
    let scale = inst.max_cost().max(1) * inst.total_requirement().max(1) as Cost;
    (scale * pick as Cost) / 8
}

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}
