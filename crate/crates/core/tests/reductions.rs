use mrta_core::exact::{brute_force, exact_task_budget, exact_total_budget};
use mrta_core::instances::{
    from_2kp, gen_bitcost, gen_from_3partition, gen_from_independent_set, gen_random, has_3partition,
    random_adjacency, to_2kp, GeneratorConfig, SimpleGraph, TwoKpInstance,
};
use mrta_core::BudgetKind;
use proptest::prelude::*;

#[test]
fn independent_set_on_every_small_graph() {
    for v in 1..=5usize {
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            let g = SimpleGraph::new(v, edges).unwrap();
            let r = gen_from_independent_set(&g).unwrap();
            assert_eq!(r.instance.robot_count(), v * v - g.edges.len());
            let got = exact_total_budget(&r.instance, r.budget.value);
            assert_eq!(got.handled_count, g.independence_number(), "{g:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 250, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn three_partition_fidelity(k in 1usize..=3, raw in prop::collection::vec(1u64..=6, 9)) {
        let s = raw[..3 * k].to_vec();
        prop_assume!(s.iter().sum::<u64>() % k as u64 == 0);
        let (inst, b) = gen_from_3partition(&s).unwrap();
        let got = exact_task_budget(&inst, b.value).handled_count;
        prop_assert_eq!(got == k, has_3partition(&s));
    }

    #[test]
    fn two_kp_round_trip(items in prop::collection::vec((1u64..=4, 0u64..=12), 0..=12), cap in (1u64..=12, 0u64..=40)) {
        let kp = TwoKpInstance { items, capacity: cap };
        let (inst, b) = from_2kp(&kp).unwrap();
        let got = exact_total_budget(&inst, b.value).handled_count;
        prop_assert_eq!(got, kp.brute_force_optimum());
        let back = to_2kp(&inst, b.value).unwrap();
        prop_assert_eq!(back.brute_force_optimum(), got);
    }

    #[test]
    fn bitcost_kinds_agree(seed in any::<u64>(), n in 1usize..=8, m in 1usize..=3) {
        let adj = random_adjacency(seed, n, m, 0.6);
        let counts: Vec<usize> = BudgetKind::ALL
            .iter()
            .map(|&kind| {
                let (inst, b) = gen_bitcost(&adj, m, kind).unwrap();
                brute_force(&inst, b).unwrap().handled_count
            })
            .collect();
        prop_assert!(counts.windows(2).all(|w| w[0] == w[1]), "{:?}", counts);
    }

    #[test]
    fn generators_are_deterministic(seed in any::<u64>(), sym in any::<bool>(), uni in any::<bool>()) {
        let cfg = GeneratorConfig { symmetric: sym, uniform: uni, q_max: 3, ..GeneratorConfig::new(seed, 6, 4) };
        let a = gen_random(&cfg).unwrap();
        prop_assert_eq!(&a, &gen_random(&cfg).unwrap());
        prop_assert_eq!(a.is_symmetric() || !sym, true);
        prop_assert_eq!(a.is_uniform() || !uni, true);
    }
}
