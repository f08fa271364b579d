mod common;

use common::{budget_for, matrix_instance, min_cost_by_handled, symmetric_instance, uniform_symmetric_instance};
use mrta_core::exact::{brute_force, exact_total_budget};
use mrta_core::polycases::{
    k_cost_curve, min_cost_exactly_k_q2, min_cost_handle_all, solve_q2, solve_symmetric_robot, solve_symmetric_task,
    solve_symmetric_uniform_total,
};
use mrta_core::{evaluate, is_feasible, Budget, BudgetKind, Error, Instance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::cases(300))]

    #[test]
    fn uniform_total_matches_oracle(inst in uniform_symmetric_instance(8, 5, 3, 9), pick in 0u32..=8) {
        let w = budget_for(&inst, pick);
        let r = solve_symmetric_uniform_total(&inst, w).unwrap();
        prop_assert_eq!(r.handled_count, brute_force(&inst, Budget::total(w)).unwrap().handled_count);
        prop_assert!(is_feasible(&inst, Budget::total(w), &r.assignment));
    }

    #[test]
    fn symmetric_task_matches_oracle(inst in symmetric_instance(8, 5, 3, 9), pick in 0u32..=8) {
        let w = budget_for(&inst, pick);
        let r = solve_symmetric_task(&inst, w).unwrap();
        prop_assert_eq!(r.handled_count, brute_force(&inst, Budget::per_task(w)).unwrap().handled_count);
        prop_assert!(is_feasible(&inst, Budget::per_task(w), &r.assignment));
    }

    #[test]
    fn symmetric_robot_matches_oracle(inst in symmetric_instance(8, 5, 3, 9), w in 0i64..=10) {
        let r = solve_symmetric_robot(&inst, w).unwrap();
        prop_assert_eq!(r.handled_count, brute_force(&inst, Budget::per_robot(w)).unwrap().handled_count);
        prop_assert!(is_feasible(&inst, Budget::per_robot(w), &r.assignment));
    }

    #[test]
    fn q2_matches_oracle(inst in matrix_instance(8, 5, 2, 9), pick in 0u32..=8, w in 0i64..=10) {
        let total = budget_for(&inst, pick);
        let r = solve_q2(&inst, BudgetKind::Total, total).unwrap();
        prop_assert_eq!(r.handled_count, brute_force(&inst, Budget::total(total)).unwrap().handled_count);
        prop_assert!(is_feasible(&inst, Budget::total(total), &r.assignment));
        let r = solve_q2(&inst, BudgetKind::PerRobot, w).unwrap();
        prop_assert_eq!(r.handled_count, brute_force(&inst, Budget::per_robot(w)).unwrap().handled_count);
        prop_assert!(is_feasible(&inst, Budget::per_robot(w), &r.assignment));
    }

    #[test]
    fn exactly_k_matches_enumeration(inst in matrix_instance(7, 4, 2, 9)) {
        let oracle = min_cost_by_handled(&inst);
        let curve = k_cost_curve(&inst).unwrap();
        prop_assert!(curve.is_monotone());
        for (k, want) in oracle.iter().enumerate() {
            prop_assert_eq!(curve.cost(k), *want, "k={}", k);
            if let Some((cost, a)) = &curve.entries[k] {
                let e = evaluate(&inst, a).unwrap();
                prop_assert_eq!(e.handled_count, k);
                prop_assert_eq!(e.total_cost, *cost);
            }
        }
    }

    #[test]
    fn handle_all_agrees_with_total_budget(inst in matrix_instance(8, 5, 3, 9)) {
        let m = inst.task_count();
        match min_cost_handle_all(&inst) {
            Ok((cost, a)) => {
                let e = evaluate(&inst, &a).unwrap();
                prop_assert_eq!(e.handled_count, m);
                prop_assert_eq!(e.total_cost, cost);
                prop_assert_eq!(exact_total_budget(&inst, cost).handled_count, m);
                if cost > 0 {
                    prop_assert!(exact_total_budget(&inst, cost - 1).handled_count < m);
                }
            }
            Err(Error::Infeasible(_)) => prop_assert!(inst.total_requirement() > inst.robot_count()),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn q2_count_ignores_robot_order(inst in matrix_instance(8, 5, 2, 9), pick in 0u32..=8, seed in any::<u64>()) {
        let w = budget_for(&inst, pick);
        let n = inst.robot_count();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let costs = order.iter().map(|&i| inst.costs[i].clone()).collect();
        let shuffled = Instance::new(n, inst.requirements.clone(), costs).unwrap();
        for kind in [BudgetKind::Total, BudgetKind::PerRobot] {
            prop_assert_eq!(
                solve_q2(&inst, kind, w).unwrap().handled_count,
                solve_q2(&shuffled, kind, w).unwrap().handled_count
            );
        }
    }
}

#[test]
fn preconditions_are_enforced() {
    let asym = Instance::new(2, vec![3], vec![vec![1], vec![2]]).unwrap();
    assert!(matches!(solve_symmetric_task(&asym, 5), Err(Error::PreconditionViolated(_))));
    assert!(matches!(solve_q2(&asym, BudgetKind::Total, 5), Err(Error::PreconditionViolated(_))));
    assert!(matches!(min_cost_exactly_k_q2(&asym, 0), Err(Error::PreconditionViolated(_))));
}
